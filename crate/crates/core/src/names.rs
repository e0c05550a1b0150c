//! Canonical path and gadget identifiers. Exported artifacts use these
//! verbatim, so they must stay stable across runs.

use crate::graph::HubKind;

pub fn selector(i: usize, j: usize) -> String {
    format!("s[{i},{j}]")
}

pub fn hub(kind: HubKind, r: usize) -> String {
    format!("{}[{r}]", kind.letter())
}

pub fn selector_path(i: usize, j: usize, kind: HubKind, r: usize) -> String {
    format!("P({},{})", selector(i, j), hub(kind, r))
}

/// Path from `u_r^p` (or `v_r^p` when `is_v`) to a hub of group `r`.
pub fn pair_path(is_v: bool, r: usize, p: usize, kind: HubKind) -> String {
    let end = if is_v { 'v' } else { 'u' };
    format!("P({end}[{r},{p}],{})", hub(kind, r))
}

pub fn anchor_path(i: usize, j: usize, h: usize) -> String {
    format!("P({},p[{i},{h}])", selector(i, j))
}

/// `P^h(i,j,t_r)` from `pi_i^h` towards the selector path `P(s_i^j, t_r)`.
pub fn branch_path(h: usize, i: usize, j: usize, kind: HubKind, r: usize) -> String {
    format!("P[{h}]({i},{j},{})", hub(kind, r))
}

/// `P^h(i,j,p_i^{3-h})` from `pi_i^h` towards `P(s_i^j, p_i^{3-h})`.
pub fn cross_path(h: usize, i: usize, j: usize) -> String {
    format!("P[{h}]({i},{j},p[{i},{}])", 3 - h)
}

pub fn side_path(i: usize, h: usize, kind: HubKind, r: usize) -> String {
    format!("P(pi[{i},{h}],{})", hub(kind, r))
}

/// Path from `q_i^h` to `mid(P^{3-h}(i,j,p_i^h))`.
pub fn link_path(i: usize, j: usize, h: usize) -> String {
    format!("P(q[{i},{h}],mid({}))", cross_path(3 - h, i, j))
}

pub fn gadget_branch(h: usize, i: usize, j: usize, kind: HubKind, r: usize) -> String {
    format!("F[{h}]({i},{j},{})", hub(kind, r))
}

pub fn gadget_cross(h: usize, i: usize, j: usize) -> String {
    format!("F[{h}]({i},{j},p[{i},{}])", 3 - h)
}

pub fn gadget_side(i: usize, h: usize, kind: HubKind, r: usize) -> String {
    format!("F(pi[{i},{h}],{})", hub(kind, r))
}

pub fn gadget_selector(i: usize, j: usize, kind: HubKind, r: usize) -> String {
    format!("F({},{})", selector(i, j), hub(kind, r))
}

pub fn gadget_mid(i: usize, j: usize, h: usize) -> String {
    format!("Fmid({i},{j},{h})")
}

pub fn gadget_ecc(i: usize, j: usize, h: usize, r: usize) -> String {
    format!("Fecc({i},{j},{h},{r})")
}

/// `F^t(u_r^i, v_r^i)`, `t` in {1, 2}.
pub fn gadget_pair(t: usize, r: usize, i: usize) -> String {
    format!("F{t}(u[{r},{i}])")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(selector_path(1, 1, HubKind::A, 1), "P(s[1,1],a[1])");
        assert_eq!(pair_path(true, 2, 1, HubKind::B), "P(v[2,1],b[2])");
        assert_eq!(anchor_path(1, 1, 1), "P(s[1,1],p[1,1])");
        assert_eq!(branch_path(1, 2, 3, HubKind::A, 1), "P[1](2,3,a[1])");
        assert_eq!(cross_path(2, 1, 3), "P[2](1,3,p[1,1])");
        assert_eq!(link_path(1, 2, 1), "P(q[1,1],mid(P[2](1,2,p[1,1])))");
        assert_eq!(gadget_branch(1, 2, 3, HubKind::A, 1), "F[1](2,3,a[1])");
        assert_eq!(gadget_mid(1, 2, 1), "Fmid(1,2,1)");
        assert_eq!(gadget_ecc(1, 2, 1, 3), "Fecc(1,2,1,3)");
        assert_eq!(gadget_pair(1, 2, 1), "F1(u[2,1])");
    }
}
