use super::{bottom_substrings, top_substrings, StringWord, Substring};
use crate::quiver::{GentleQuiver, Letter};

/// One basis morphism `M(ρ) → M(ρ′)`: a top substring of ρ identified with
/// a bottom substring of ρ′, read forwards or (`flip`) backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomPair {
    pub top: Substring,
    pub bottom: Substring,
    pub flip: bool,
}

impl HomPair {
    /// Image of position `top.start + j` of the source.
    pub fn image_of(&self, pos: usize) -> usize {
        let j = pos - self.top.start;
        if self.flip {
            self.bottom.end - j
        } else {
            self.bottom.start + j
        }
    }
}

fn inverse_letters(l: &[Letter]) -> Vec<Letter> {
    l.iter().rev().map(|x| x.inv()).collect()
}

/// Basis of `Hom(M(ρ), M(ρ′))`, sorted.
pub fn hom_basis(q: &GentleQuiver, rho: &StringWord, rho2: &StringWord) -> Vec<HomPair> {
    let w = rho.walk();
    let w2 = rho2.walk();
    let v1 = w.vertices(q);
    let v2 = w2.vertices(q);
    let mut out = Vec::new();
    let bottoms = bottom_substrings(rho2);
    for top in top_substrings(rho) {
        let letters = &w.letters()[top.start..top.end];
        for &bottom in &bottoms {
            if bottom.len() != top.len() {
                continue;
            }
            if top.is_lazy() {
                if v1[top.start] == v2[bottom.start] {
                    out.push(HomPair { top, bottom, flip: false });
                }
                continue;
            }
            let target = &w2.letters()[bottom.start..bottom.end];
            if target == letters {
                out.push(HomPair { top, bottom, flip: false });
            } else if target == inverse_letters(letters).as_slice() {
                out.push(HomPair { top, bottom, flip: true });
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;
    use crate::strings::enumerate_strings;

    #[test]
    fn a2_examples() {
        let q = a2();
        let alpha = StringWord::parse(&q, "a+").unwrap();
        let e1 = StringWord::parse(&q, "e(1)").unwrap();
        assert_eq!(hom_basis(&q, &alpha, &e1).len(), 1);
        assert!(hom_basis(&q, &e1, &alpha).is_empty());
    }

    #[test]
    fn identity_always_present() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            for s in enumerate_strings(&q).unwrap() {
                let full = Substring { start: 0, end: s.len() };
                assert!(hom_basis(&q, &s, &s)
                    .contains(&HomPair { top: full, bottom: full, flip: false }));
            }
        }
    }
}
