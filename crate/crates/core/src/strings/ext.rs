use std::collections::BTreeSet;

use super::{canonicalize, is_at_bottom, is_on_top, is_string, substrings_where, StringWord, Substring, Walk};
use crate::quiver::{GentleQuiver, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtKind {
    Arrow,
    Overlap,
}

/// A non-split sequence `0 → M(sub) → ⊕ M(middle) → M(quot) → 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShortExactSeq {
    pub sub: StringWord,
    /// Sorted; one or two summands.
    pub middle: Vec<StringWord>,
    pub quot: StringWord,
    pub kind: ExtKind,
}

/// `(ρ-orientation, arrow, μ-orientation)` with `μ a ρ` a string.
fn arrow_configs(q: &GentleQuiver, rho: &StringWord, mu: &StringWord) -> BTreeSet<(Walk, Letter, Walk)> {
    let mut out = BTreeSet::new();
    for r in rho.orientations(q) {
        for m in mu.orientations(q) {
            for &a in q.outgoing(r.end(q)) {
                if q.target(a) != m.start() {
                    continue;
                }
                let l = Letter::direct(a);
                let nu = r.push(q, l).concat(q, &m);
                if is_string(q, &nu) {
                    out.insert((r.clone(), l, m.clone()));
                }
            }
        }
    }
    out
}

/// Strings `ν = μ a ρ` over both orientations of ρ and μ, canonicalized.
pub fn arrow_extensions(q: &GentleQuiver, rho: &StringWord, mu: &StringWord) -> BTreeSet<StringWord> {
    arrow_configs(q, rho, mu)
        .into_iter()
        .map(|(r, l, m)| canonicalize(q, &r.push(q, l).concat(q, &m)))
        .collect()
}

type OverlapKey = (Walk, Substring, Walk, Substring);

fn overlap_configs(q: &GentleQuiver, rho: &StringWord, mu: &StringWord) -> Vec<(StringWord, StringWord)> {
    let mut seen: BTreeSet<OverlapKey> = BTreeSet::new();
    let mut out = Vec::new();
    for r in rho.orientations(q) {
        let rv = r.vertices(q);
        let rl = r.letters();
        for m in mu.orientations(q) {
            let mv = m.vertices(q);
            let ml = m.letters();
            for sb in substrings_where(&r, is_at_bottom) {
                for st in substrings_where(&m, is_on_top) {
                    if sb.len() != st.len() {
                        continue;
                    }
                    if sb.is_lazy() {
                        if rv[sb.start] != mv[st.start] {
                            continue;
                        }
                    } else if rl[sb.start..sb.end] != ml[st.start..st.end] {
                        continue;
                    }
                    let rho_l_lazy = sb.start == 0;
                    let rho_r_lazy = sb.end == rl.len();
                    let mu_l_lazy = st.start == 0;
                    let mu_r_lazy = st.end == ml.len();
                    if (rho_l_lazy && mu_l_lazy) || (rho_r_lazy && mu_r_lazy) {
                        continue;
                    }
                    if sb.is_lazy() {
                        // right side: ρ continues with b⁻¹, μ with d; need d b ∈ R
                        if !rho_r_lazy && !mu_r_lazy && !q.is_relation(rl[sb.end].arrow, ml[st.end].arrow) {
                            continue;
                        }
                        // left side: ρ arrives by a, μ by c⁻¹; need c a ∈ R
                        if !rho_l_lazy
                            && !mu_l_lazy
                            && !q.is_relation(rl[sb.start - 1].arrow, ml[st.start - 1].arrow)
                        {
                            continue;
                        }
                    }
                    let nu1 = r.slice(q, 0, sb.end).concat(q, &m.slice(q, st.end, ml.len()));
                    let nu2 = m.slice(q, 0, st.end).concat(q, &r.slice(q, sb.end, rl.len()));
                    if !is_string(q, &nu1) || !is_string(q, &nu2) {
                        continue;
                    }
                    let key = (r.clone(), sb, m.clone(), st);
                    let mirror =
                        (r.inverse(q), sb.mirrored(rl.len()), m.inverse(q), st.mirrored(ml.len()));
                    if !seen.insert(key.min(mirror)) {
                        continue;
                    }
                    out.push((canonicalize(q, &nu1), canonicalize(q, &nu2)));
                }
            }
        }
    }
    out
}

/// Conjugate overlap pairs `{ν1, ν2}` (each pair sorted), deduplicated.
pub fn overlap_extensions(
    q: &GentleQuiver,
    rho: &StringWord,
    mu: &StringWord,
) -> BTreeSet<(StringWord, StringWord)> {
    overlap_configs(q, rho, mu)
        .into_iter()
        .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
        .collect()
}

/// Basis of `Ext¹(M(ρ), M(μ))` as short exact sequences with sub `μ` and
/// quotient `ρ`.
pub fn ext_basis(q: &GentleQuiver, rho: &StringWord, mu: &StringWord) -> Vec<ShortExactSeq> {
    let mut out = Vec::new();
    for (r, l, m) in arrow_configs(q, rho, mu) {
        out.push(ShortExactSeq {
            sub: mu.clone(),
            middle: vec![canonicalize(q, &r.push(q, l).concat(q, &m))],
            quot: rho.clone(),
            kind: ExtKind::Arrow,
        });
    }
    for (a, b) in overlap_configs(q, rho, mu) {
        let mut middle = vec![a, b];
        middle.sort();
        out.push(ShortExactSeq { sub: mu.clone(), middle, quot: rho.clone(), kind: ExtKind::Overlap });
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;
    use crate::strings::{dim_vector, enumerate_strings};

    fn s(q: &GentleQuiver, t: &str) -> StringWord {
        StringWord::parse(q, t).unwrap()
    }

    #[test]
    fn arrow_extension_examples() {
        let q = a3();
        let got = arrow_extensions(&q, &s(&q, "e(1)"), &s(&q, "b+"));
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![s(&q, "a+ b+")]);
        assert!(arrow_extensions(&q, &s(&q, "e(3)"), &s(&q, "e(2)")).is_empty());
        let q2 = a2();
        let got = arrow_extensions(&q2, &s(&q2, "e(1)"), &s(&q2, "e(2)"));
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![s(&q2, "a+")]);
    }

    #[test]
    fn overlap_through_the_sink() {
        let q = sink();
        let got = overlap_extensions(&q, &s(&q, "a+ b-"), &s(&q, "e(2)"));
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![(s(&q, "a+"), s(&q, "b+"))]);
        let basis = ext_basis(&q, &s(&q, "a+ b-"), &s(&q, "e(2)"));
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].kind, ExtKind::Overlap);
    }

    #[test]
    fn overlap_in_linear_a3() {
        // Ext¹(M(α), M(β)) is one-dimensional: M(β) → M(βα) ⊕ S2 → M(α).
        let q = a3();
        let got = overlap_extensions(&q, &s(&q, "a+"), &s(&q, "b+"));
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![(s(&q, "e(2)"), s(&q, "a+ b+"))]);
    }

    #[test]
    fn no_self_overlap_on_lazy() {
        let q = a3();
        for v in ["e(1)", "e(2)", "e(3)"] {
            assert!(overlap_extensions(&q, &s(&q, v), &s(&q, v)).is_empty());
        }
    }

    #[test]
    fn additivity_and_mid_bound() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let all = enumerate_strings(&q).unwrap();
            for r in &all {
                for m in &all {
                    for ses in ext_basis(&q, r, m) {
                        assert!(ses.middle.len() <= 2);
                        let lhs: Vec<usize> = dim_vector(&q, &ses.sub)
                            .iter()
                            .zip(dim_vector(&q, &ses.quot))
                            .map(|(a, b)| a + b)
                            .collect();
                        let mut rhs = vec![0; q.num_vertices()];
                        for x in &ses.middle {
                            for (i, d) in dim_vector(&q, x).into_iter().enumerate() {
                                rhs[i] += d;
                            }
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
