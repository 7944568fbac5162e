//! Resolving closures, the resolving predicate and the lattice of resolving
//! subcategories. Projectives are implicit everywhere: a set only stores its
//! non-projective strings.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::Error;
use crate::homology::{is_projective, syzygy};
use crate::quiver::GentleQuiver;
use crate::strings::{enumerate_strings, ext_basis, kernel_of_min_epi, reduced_epis_onto, MinEpi, ShortExactSeq, StringWord};

/// Non-projective part of a resolving subcategory, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResolvingSet {
    pub nonproj: Vec<StringWord>,
}

impl ResolvingSet {
    pub fn contains(&self, s: &StringWord) -> bool {
        self.nonproj.binary_search(s).is_ok()
    }

    pub fn is_subset(&self, other: &ResolvingSet) -> bool {
        self.nonproj.iter().all(|s| other.contains(s))
    }

    pub fn len(&self) -> usize {
        self.nonproj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nonproj.is_empty()
    }

    pub fn to_text(&self, q: &GentleQuiver) -> String {
        let parts: Vec<String> = self.nonproj.iter().map(|s| s.to_text(q)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Which closure rule to apply besides extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Kernels of epimorphisms from the set onto its members.
    Kernels,
    /// Syzygies of members; only complete on trees.
    Syzygies,
}

struct EpiRule {
    epi: MinEpi,
    /// Non-projective strings that must be present: the target and the
    /// non-projective sources.
    needs: Vec<usize>,
    kernel: Vec<usize>,
}

/// Precomputed ext middles, syzygies and epimorphisms over all strings of a
/// quiver, indexed by position in the canonical string order.
pub struct Catalog {
    q: GentleQuiver,
    strings: Vec<StringWord>,
    index: HashMap<StringWord, usize>,
    projective: FixedBitSet,
    /// `ext_mid[a * n + b]`: non-projective middles of `Ext¹(a, b)`.
    ext_mid: Vec<Vec<usize>>,
    ext_with_proj: Vec<Vec<usize>>,
    syz: Vec<Vec<usize>>,
    epis: Vec<EpiRule>,
    epis_by_string: Vec<Vec<usize>>,
}

impl Catalog {
    /// Catalog with epimorphisms from at most two sources.
    pub fn new(q: &GentleQuiver) -> Result<Self, Error> {
        Self::with_max_sources(q, Some(2))
    }

    /// Catalog with reduced-cover epimorphisms of any width.
    pub fn unrestricted(q: &GentleQuiver) -> Result<Self, Error> {
        Self::with_max_sources(q, None)
    }

    fn with_max_sources(q: &GentleQuiver, max_sources: Option<usize>) -> Result<Self, Error> {
        let strings = enumerate_strings(q)?;
        if q.has_relation_cycle() {
            return Err(Error::InfiniteGldim);
        }
        let n = strings.len();
        let index: HashMap<StringWord, usize> = strings.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut projective = FixedBitSet::with_capacity(n);
        for (i, s) in strings.iter().enumerate() {
            projective.set(i, is_projective(q, s));
        }
        let nonproj_indices = |list: &[StringWord]| -> Vec<usize> {
            let mut v: Vec<usize> = list.iter().map(|s| index[s]).filter(|&i| !projective[i]).collect();
            v.sort_unstable();
            v.dedup();
            v
        };

        let mut ext_mid = vec![Vec::new(); n * n];
        let mut ext_with_proj = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                let mids: Vec<StringWord> =
                    ext_basis(q, &strings[a], &strings[b]).into_iter().flat_map(|e| e.middle).collect();
                ext_mid[a * n + b] = nonproj_indices(&mids);
            }
            let mut wp: Vec<usize> = (0..n)
                .filter(|&p| projective[p])
                .flat_map(|p| ext_mid[a * n + p].iter().chain(&ext_mid[p * n + a]).copied().collect::<Vec<_>>())
                .collect();
            wp.sort_unstable();
            wp.dedup();
            ext_with_proj[a] = wp;
        }

        let syz = strings.iter().map(|s| nonproj_indices(&syzygy(q, s))).collect();

        let mut epis = Vec::new();
        let mut epis_by_string = vec![Vec::new(); n];
        for t in (0..n).filter(|&t| !projective[t]) {
            let target = &strings[t];
            let width = max_sources.unwrap_or(target.len() + 1);
            for e in reduced_epis_onto(q, target, &strings, width) {
                if e.is_identity() {
                    continue;
                }
                let kernel = nonproj_indices(&kernel_of_min_epi(q, &e));
                if kernel.is_empty() {
                    continue;
                }
                let mut needs = nonproj_indices(&e.source_strings());
                needs.push(t);
                needs.sort_unstable();
                needs.dedup();
                let id = epis.len();
                for &x in &needs {
                    epis_by_string[x].push(id);
                }
                epis.push(EpiRule { epi: e, needs, kernel });
            }
        }

        Ok(Catalog { q: q.clone(), strings, index, projective, ext_mid, ext_with_proj, syz, epis, epis_by_string })
    }

    pub fn quiver(&self) -> &GentleQuiver {
        &self.q
    }

    pub fn strings(&self) -> &[StringWord] {
        &self.strings
    }

    pub fn index_of(&self, s: &StringWord) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn is_projective_index(&self, i: usize) -> bool {
        self.projective[i]
    }

    pub fn nonprojectives(&self) -> Vec<StringWord> {
        self.nonproj_indices().map(|i| self.strings[i].clone()).collect()
    }

    fn nonproj_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.strings.len()).filter(|&i| !self.projective[i])
    }

    pub fn num_epis(&self) -> usize {
        self.epis.len()
    }

    fn bits_of(&self, seeds: &[StringWord]) -> Result<FixedBitSet, Error> {
        let mut bits = FixedBitSet::with_capacity(self.strings.len());
        for s in seeds {
            let i = self.index_of(s).ok_or_else(|| Error::BadString {
                text: s.to_text(&self.q),
                reason: "not a string of this quiver".into(),
            })?;
            if !self.projective[i] {
                bits.insert(i);
            }
        }
        Ok(bits)
    }

    fn set_of(&self, bits: &FixedBitSet) -> ResolvingSet {
        ResolvingSet { nonproj: bits.ones().map(|i| self.strings[i].clone()).collect() }
    }

    /// Least superset of `base` (assumed closed) and `seeds` closed under
    /// extensions and `rule`. Each newly added string is paired only with
    /// what is present when it is processed.
    fn close_from(&self, base: &FixedBitSet, seeds: &FixedBitSet, rule: Rule) -> FixedBitSet {
        let n = self.strings.len();
        let mut set = base.clone();
        let mut queue: VecDeque<usize> = VecDeque::new();
        let add = |set: &mut FixedBitSet, queue: &mut VecDeque<usize>, x: usize| {
            if !set.put(x) {
                queue.push_back(x);
            }
        };
        for x in seeds.ones() {
            add(&mut set, &mut queue, x);
        }
        while let Some(x) = queue.pop_front() {
            let mut found: Vec<usize> = self.ext_with_proj[x].clone();
            for y in set.ones() {
                found.extend(&self.ext_mid[x * n + y]);
                found.extend(&self.ext_mid[y * n + x]);
            }
            match rule {
                Rule::Syzygies => found.extend(&self.syz[x]),
                Rule::Kernels => {
                    for &e in &self.epis_by_string[x] {
                        let rule = &self.epis[e];
                        if rule.needs.iter().all(|&i| set[i]) {
                            found.extend(&rule.kernel);
                        }
                    }
                }
            }
            for y in found {
                add(&mut set, &mut queue, y);
            }
        }
        set
    }

    fn closure_bits(&self, seeds: &FixedBitSet, rule: Rule) -> FixedBitSet {
        self.close_from(&FixedBitSet::with_capacity(self.strings.len()), seeds, rule)
    }

    pub fn res_closure(&self, seeds: &[StringWord]) -> Result<ResolvingSet, Error> {
        Ok(self.set_of(&self.closure_bits(&self.bits_of(seeds)?, Rule::Kernels)))
    }

    /// Closure under extensions and syzygies, valid on trees.
    pub fn res_closure_tree(&self, seeds: &[StringWord]) -> Result<ResolvingSet, Error> {
        if !self.q.is_tree() {
            return Err(Error::NotATree);
        }
        Ok(self.set_of(&self.closure_bits(&self.bits_of(seeds)?, Rule::Syzygies)))
    }

    /// Checks each closure clause directly and reports every witness.
    pub fn is_resolving(&self, s: &[StringWord]) -> Result<ResolvingReport, Error> {
        let bits = self.bits_of(s)?;
        let n = self.strings.len();
        let present = |i: usize| self.projective[i] || bits[i];
        let mut violations = Vec::new();
        for a in (0..n).filter(|&i| present(i)) {
            for b in (0..n).filter(|&i| present(i)) {
                if self.ext_mid[a * n + b].iter().all(|&m| bits[m]) {
                    continue;
                }
                for seq in ext_basis(&self.q, &self.strings[a], &self.strings[b]) {
                    if let Some(m) = seq.middle.iter().find(|m| !present(self.index[*m])) {
                        violations.push(ResViolation::Extension { missing: m.clone(), seq });
                    }
                }
            }
        }
        for rule in &self.epis {
            if !rule.needs.iter().all(|&i| bits[i]) {
                continue;
            }
            if let Some(&k) = rule.kernel.iter().find(|&&k| !bits[k]) {
                violations.push(ResViolation::Kernel { epi: rule.epi.clone(), missing: self.strings[k].clone() });
            }
        }
        Ok(ResolvingReport { violations })
    }

    pub fn meet(&self, a: &ResolvingSet, b: &ResolvingSet) -> ResolvingSet {
        ResolvingSet { nonproj: a.nonproj.iter().filter(|s| b.contains(s)).cloned().collect() }
    }

    pub fn join(&self, a: &ResolvingSet, b: &ResolvingSet) -> Result<ResolvingSet, Error> {
        let base = self.bits_of(&a.nonproj)?;
        let seeds = self.bits_of(&b.nonproj)?;
        Ok(self.set_of(&self.close_from(&base, &seeds, Rule::Kernels)))
    }

    /// `Res(m) ⊆ Res(n)`.
    pub fn res_leq(&self, m: &StringWord, n: &StringWord) -> Result<bool, Error> {
        let rm = self.res_closure(std::slice::from_ref(m))?;
        let rn = self.res_closure(std::slice::from_ref(n))?;
        Ok(rm.is_subset(&rn))
    }

    /// All resolving subcategories, found by closing every element under
    /// adding one more string, with the Hasse diagram of inclusion.
    pub fn all_resolving(&self) -> ResLattice {
        let n = self.strings.len();
        let empty = FixedBitSet::with_capacity(n);
        let mut ids: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut elems: Vec<FixedBitSet> = Vec::new();
        let mut ups: Vec<Vec<usize>> = Vec::new();
        ids.insert(empty.clone(), 0);
        elems.push(empty);
        let mut i = 0;
        while i < elems.len() {
            let base = elems[i].clone();
            let mut cands: BTreeSet<usize> = BTreeSet::new();
            for x in self.nonproj_indices().filter(|&x| !base[x]) {
                let mut seed = FixedBitSet::with_capacity(n);
                seed.insert(x);
                let c = self.close_from(&base, &seed, Rule::Kernels);
                let id = *ids.entry(c.clone()).or_insert_with(|| {
                    elems.push(c);
                    elems.len() - 1
                });
                cands.insert(id);
            }
            let covers: Vec<usize> = cands
                .iter()
                .copied()
                .filter(|&c| !cands.iter().any(|&d| d != c && elems[d].is_subset(&elems[c])))
                .collect();
            ups.push(covers);
            i += 1;
        }
        let mut order: Vec<usize> = (0..elems.len()).collect();
        let sets: Vec<ResolvingSet> = elems.iter().map(|b| self.set_of(b)).collect();
        order.sort_by(|&a, &b| (sets[a].len(), &sets[a]).cmp(&(sets[b].len(), &sets[b])));
        let mut rank = vec![0; order.len()];
        for (r, &o) in order.iter().enumerate() {
            rank[o] = r;
        }
        let mut hasse: Vec<(usize, usize)> =
            ups.iter().enumerate().flat_map(|(a, cs)| cs.iter().map(move |&c| (a, c))).map(|(a, c)| (rank[a], rank[c])).collect();
        hasse.sort_unstable();
        ResLattice { elements: order.into_iter().map(|o| sets[o].clone()).collect(), hasse }
    }

    /// The distinct closures `Res(s)` over non-projective `s`.
    pub fn monogeneous(&self) -> BTreeSet<ResolvingSet> {
        self.nonproj_indices()
            .map(|i| {
                let mut seed = FixedBitSet::with_capacity(self.strings.len());
                seed.insert(i);
                self.set_of(&self.closure_bits(&seed, Rule::Kernels))
            })
            .collect()
    }
}

/// A witness that a set fails to be resolving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResViolation {
    /// Not closed under extensions.
    Extension { seq: ShortExactSeq, missing: StringWord },
    /// Not closed under kernels of epimorphisms.
    Kernel { epi: MinEpi, missing: StringWord },
}

impl ResViolation {
    pub fn clause(&self) -> &'static str {
        match self {
            ResViolation::Extension { .. } => "R'2",
            ResViolation::Kernel { .. } => "R'3",
        }
    }

    pub fn describe(&self, q: &GentleQuiver) -> String {
        match self {
            ResViolation::Extension { seq, missing } => {
                let mid: Vec<String> = seq.middle.iter().map(|m| m.to_text(q)).collect();
                format!(
                    "({}) {} -> {} -> {} lacks {}",
                    self.clause(),
                    seq.sub.to_text(q),
                    mid.join(" + "),
                    seq.quot.to_text(q),
                    missing.to_text(q)
                )
            }
            ResViolation::Kernel { epi, missing } => {
                let src: Vec<String> = epi.source_strings().iter().map(|s| s.to_text(q)).collect();
                format!(
                    "({}) kernel of {} -> {} lacks {}",
                    self.clause(),
                    src.join(" + "),
                    epi.target.to_text(q),
                    missing.to_text(q)
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvingReport {
    pub violations: Vec<ResViolation>,
}

impl ResolvingReport {
    pub fn is_resolving(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResLattice {
    /// Sorted by size, then lexicographically; element 0 is the bottom.
    pub elements: Vec<ResolvingSet>,
    /// `(covered, cover)` index pairs.
    pub hasse: Vec<(usize, usize)>,
}

impl ResLattice {
    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.hasse.iter().filter(|&&(_, c)| c == i).map(|&(a, _)| a).collect()
    }

    /// Indices of elements with exactly one lower cover.
    pub fn join_irreducible_indices(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.lower_covers(i).len() == 1).collect()
    }

    pub fn join_irreducibles(&self) -> BTreeSet<ResolvingSet> {
        self.join_irreducible_indices().into_iter().map(|i| self.elements[i].clone()).collect()
    }

    pub fn top(&self) -> &ResolvingSet {
        self.elements.last().expect("lattice is never empty")
    }

    /// DOT digraph with edges from smaller to larger; join-irreducibles are
    /// drawn as double circles.
    pub fn to_dot(&self, q: &GentleQuiver) -> String {
        let ji: BTreeSet<usize> = self.join_irreducible_indices().into_iter().collect();
        let mut out = String::from("digraph resolving {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let label = e.to_text(q).replace('"', "\\\"");
            if ji.contains(&i) {
                out.push_str(&format!("  n{i} [label=\"{label}\", shape=doublecircle, joinirreducible=true];\n"));
            } else {
                out.push_str(&format!("  n{i} [label=\"{label}\", shape=ellipse];\n"));
            }
        }
        for (a, b) in &self.hasse {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for ResViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResViolation::Extension { .. } => write!(f, "not closed under extensions"),
            ResViolation::Kernel { .. } => write!(f, "not closed under kernels of epimorphisms"),
        }
    }
}
