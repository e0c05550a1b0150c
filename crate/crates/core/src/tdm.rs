//! 3-Dimensional Matching instances: the source problem of the reduction.
//!
//! File format: a `3dm <n> <m>` header, then `m` lines `tuple <x> <y> <z>`.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{TdmError, TdmParseError};

/// Universe `{1,2,3} x [n]` and tuples `(x, y, z)`, tuple `j` (1-based)
/// standing for `{(1,x), (2,y), (3,z)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDMInstance {
    pub n: usize,
    pub tuples: Vec<[usize; 3]>,
}

impl ThreeDMInstance {
    pub fn new(n: usize, tuples: Vec<[usize; 3]>) -> Result<Self, TdmError> {
        if n == 0 {
            return Err(TdmError::Invalid("n must be positive".into()));
        }
        if tuples.is_empty() {
            return Err(TdmError::Invalid("at least one tuple is required".into()));
        }
        if let Some((j, t)) = tuples
            .iter()
            .enumerate()
            .find(|(_, t)| t.iter().any(|&c| c == 0 || c > n))
        {
            return Err(TdmError::Invalid(format!(
                "tuple {} = {:?} has a coordinate outside [1, {n}]",
                j + 1,
                t
            )));
        }
        Ok(Self { n, tuples })
    }

    pub fn m(&self) -> usize {
        self.tuples.len()
    }

    /// Tuple `j`, 1-based.
    pub fn tuple(&self, j: usize) -> [usize; 3] {
        self.tuples[j - 1]
    }

    /// Whether element `(r, x)` (`r` in 1..=3) belongs to tuple `j`.
    pub fn contains(&self, j: usize, r: usize, x: usize) -> bool {
        self.tuple(j)[r - 1] == x
    }

    pub fn parse(text: &str) -> Result<Self, TdmParseError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut tuples = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| TdmParseError { line, msg };
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut parts = t.split_whitespace();
            let tag = parts.next().unwrap_or_default();
            let nums: Vec<usize> = parts
                .map(|p| p.parse().map_err(|_| err(format!("not a nonnegative integer: {p}"))))
                .collect::<Result<_, _>>()?;
            match (tag, nums.as_slice(), header) {
                ("3dm", &[n, m], None) => {
                    if n == 0 || m == 0 {
                        return Err(err("n and m must be positive".into()));
                    }
                    header = Some((n, m, line));
                }
                ("3dm", _, _) => return Err(err("malformed or repeated header".into())),
                ("tuple", &[x, y, z], Some((n, m, _))) => {
                    if tuples.len() == m {
                        return Err(err(format!("more than the announced {m} tuples")));
                    }
                    if let Some(&bad) = [x, y, z].iter().find(|&&c| c == 0 || c > n) {
                        return Err(err(format!("coordinate {bad} outside [1, {n}]")));
                    }
                    tuples.push([x, y, z]);
                }
                ("tuple", _, None) => return Err(err("tuple before header".into())),
                ("tuple", _, _) => return Err(err("a tuple needs exactly three coordinates".into())),
                _ => return Err(err(format!("unrecognized line: {t}"))),
            }
        }
        let (n, m, hline) = header.ok_or(TdmParseError {
            line: 1,
            msg: "missing `3dm <n> <m>` header".into(),
        })?;
        if tuples.len() != m {
            return Err(TdmParseError {
                line: hline,
                msg: format!("header announces {m} tuples, found {}", tuples.len()),
            });
        }
        Ok(Self { n, tuples })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("3dm {} {}\n", self.n, self.m());
        for [x, y, z] in &self.tuples {
            let _ = writeln!(out, "tuple {x} {y} {z}");
        }
        out
    }

    /// Deterministic in `(n, m, seed)`. A planted instance hides a perfect
    /// cover (two random permutations) among `m - n` uniform tuples.
    pub fn generate(n: usize, m: usize, seed: u64, planted: bool) -> Result<Self, TdmError> {
        if n == 0 || m == 0 {
            return Err(TdmError::Invalid("n and m must be positive".into()));
        }
        if planted && m < n {
            return Err(TdmError::PlantedTooFewTuples { n, m });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tuples = Vec::with_capacity(m);
        if planted {
            let mut ys: Vec<usize> = (1..=n).collect();
            let mut zs: Vec<usize> = (1..=n).collect();
            ys.shuffle(&mut rng);
            zs.shuffle(&mut rng);
            tuples.extend((0..n).map(|k| [k + 1, ys[k], zs[k]]));
        }
        while tuples.len() < m {
            tuples.push([
                rng.gen_range(1..=n),
                rng.gen_range(1..=n),
                rng.gen_range(1..=n),
            ]);
        }
        tuples.shuffle(&mut rng);
        Ok(Self { n, tuples })
    }

    /// Whether the 1-based tuple indices `cover` cover the universe exactly.
    pub fn is_cover(&self, cover: &[usize]) -> bool {
        if cover.len() != self.n || cover.iter().any(|&j| j == 0 || j > self.m()) {
            return false;
        }
        let mut seen = vec![[false; 3]; self.n + 1];
        for &j in cover {
            for (r, &c) in self.tuple(j).iter().enumerate() {
                if std::mem::replace(&mut seen[c][r], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact cover search. Returns 1-based tuple indices, the `h`-th covering
    /// `(1, h)`, or `None` when no perfect matching exists.
    pub fn solve(&self) -> Option<Vec<usize>> {
        let n = self.n;
        // rows[x] = tuples whose first coordinate is x
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (k, t) in self.tuples.iter().enumerate() {
            rows[t[0]].push(k + 1);
        }
        let mut used_y = vec![false; n + 1];
        let mut used_z = vec![false; n + 1];
        let mut chosen = Vec::with_capacity(n);
        fn search(
            inst: &ThreeDMInstance,
            rows: &[Vec<usize>],
            x: usize,
            used_y: &mut [bool],
            used_z: &mut [bool],
            chosen: &mut Vec<usize>,
        ) -> bool {
            if x > inst.n {
                return true;
            }
            for &j in &rows[x] {
                let [_, y, z] = inst.tuple(j);
                if used_y[y] || used_z[z] {
                    continue;
                }
                used_y[y] = true;
                used_z[z] = true;
                chosen.push(j);
                if search(inst, rows, x + 1, used_y, used_z, chosen) {
                    return true;
                }
                chosen.pop();
                used_y[y] = false;
                used_z[z] = false;
            }
            false
        }
        search(self, &rows, 1, &mut used_y, &mut used_z, &mut chosen).then_some(chosen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_instance() {
        let inst = ThreeDMInstance::parse("3dm 1 1\ntuple 1 1 1").unwrap();
        assert_eq!(inst.n, 1);
        assert_eq!(inst.tuples, vec![[1, 1, 1]]);
    }

    #[test]
    fn parses_with_comments() {
        let inst = ThreeDMInstance::parse("# demo\n3dm 2 3\ntuple 1 2 1\n# mid\ntuple 2 1 2\ntuple 1 1 1\n").unwrap();
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.tuple(2), [2, 1, 2]);
        assert_eq!(ThreeDMInstance::parse(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = ThreeDMInstance::parse("3dm 2 1\ntuple 3 1 1").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(ThreeDMInstance::parse("3dm 2 2\ntuple 1 1 1").unwrap_err().line, 1);
        assert_eq!(ThreeDMInstance::parse("3dm 1 1\ntuple 1 1").unwrap_err().line, 2);
        assert_eq!(ThreeDMInstance::parse("tuple 1 1 1").unwrap_err().line, 1);
        assert_eq!(ThreeDMInstance::parse("3dm 1 1\ntuple 1 1 1\ntuple 1 1 1").unwrap_err().line, 3);
        assert_eq!(ThreeDMInstance::parse("3dm 0 1").unwrap_err().line, 1);
        assert!(ThreeDMInstance::parse("").is_err());
        assert!(ThreeDMInstance::parse("3dm 1 1\nfoo").is_err());
    }

    #[test]
    fn generate_planted_single() {
        for seed in 0..5 {
            let inst = ThreeDMInstance::generate(1, 1, seed, true).unwrap();
            assert_eq!(inst.tuples, vec![[1, 1, 1]]);
        }
    }

    #[test]
    fn generate_is_deterministic_and_planted_is_yes() {
        let a = ThreeDMInstance::generate(2, 4, 7, true).unwrap();
        assert_eq!(a, ThreeDMInstance::generate(2, 4, 7, true).unwrap());
        let cover = a.solve().expect("planted cover");
        assert!(a.is_cover(&cover));
        assert!(matches!(
            ThreeDMInstance::generate(3, 2, 0, true),
            Err(TdmError::PlantedTooFewTuples { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let one = ThreeDMInstance::new(1, vec![[1, 1, 1]]).unwrap();
        assert_eq!(one.solve(), Some(vec![1]));
        let disjoint = ThreeDMInstance::new(2, vec![[1, 1, 1], [2, 2, 2]]).unwrap();
        assert_eq!(disjoint.solve(), Some(vec![1, 2]));
        let blocked = ThreeDMInstance::new(2, vec![[1, 1, 1], [1, 2, 2]]).unwrap();
        assert_eq!(blocked.solve(), None);
    }

    #[test]
    fn is_cover_rejects_overlaps() {
        let inst = ThreeDMInstance::new(2, vec![[1, 1, 1], [2, 1, 2], [2, 2, 2]]).unwrap();
        assert!(!inst.is_cover(&[1, 2]));
        assert!(inst.is_cover(&[1, 3]));
        assert!(!inst.is_cover(&[1]));
        assert!(!inst.is_cover(&[1, 9]));
    }

    #[test]
    fn new_validates_coordinates() {
        assert!(ThreeDMInstance::new(2, vec![[1, 3, 1]]).is_err());
        assert!(ThreeDMInstance::new(0, vec![[1, 1, 1]]).is_err());
        assert!(ThreeDMInstance::new(1, vec![]).is_err());
    }
}
