#![allow(dead_code)]

use mdtw_core::ThreeDMInstance;

/// 21 instances, n <= 3, m <= 6: eleven planted, ten uniform.
pub fn corpus() -> Vec<(String, ThreeDMInstance)> {
    let planted = [
        (1, 3), (1, 4), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (3, 6),
    ];
    let random = [
        (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (3, 6),
    ];
    let mut out = Vec::new();
    for (k, &(n, m)) in planted.iter().enumerate() {
        let seed = 11 + k as u64;
        let inst = ThreeDMInstance::generate(n, m, seed, true).unwrap();
        out.push((format!("planted n={n} m={m} seed={seed}"), inst));
    }
    for (k, &(n, m)) in random.iter().enumerate() {
        let seed = 101 + k as u64;
        let inst = ThreeDMInstance::generate(n, m, seed, false).unwrap();
        out.push((format!("random n={n} m={m} seed={seed}"), inst));
    }
    out
}

/// Instances without a perfect matching, n in {2, 3}: one written by hand,
/// the rest the first uniform instance per shape that the exact solver rejects.
pub fn no_instances() -> Vec<(String, ThreeDMInstance)> {
    let mut out = vec![(
        "curated n=2 m=3".to_string(),
        ThreeDMInstance::new(2, vec![[1, 1, 1], [1, 2, 2], [2, 1, 2]]).unwrap(),
    )];
    for (n, m) in [(2, 3), (2, 4), (3, 4), (3, 5), (3, 6)] {
        let (seed, inst) = (0u64..)
            .map(|s| (s, ThreeDMInstance::generate(n, m, s, false).unwrap()))
            .find(|(_, i)| i.solve().is_none())
            .unwrap();
        out.push((format!("filtered n={n} m={m} seed={seed}"), inst));
    }
    out
}
