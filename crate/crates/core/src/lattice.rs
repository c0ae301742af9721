//! Megaideal lattices: closure of a set of megaideals under the structural
//! constructors (series, centers, radicals, sums, intersections, products,
//! centralizers, normalizers and the three-ideal commutator condition).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lie::{format_subspace, format_vector, LieAlgebra, NilradicalStatus};
use crate::linalg::{Matrix, Subspace};

/// `{ x ∈ i0 : [x, b] ∈ i2 for all b ∈ i1 }`.
pub fn prop34(g: &LieAlgebra, i0: &Subspace, i1: &Subspace, i2: &Subspace) -> Subspace {
    g.bracket_preimage(i0, i1, i2)
}

/// A basis vector of `i0` left out of a [`prop34`] result, with the element
/// of `i1` whose bracket leaves `i2`.
#[derive(Clone, Debug)]
pub struct Exclusion {
    pub element: Vec<crate::Rational>,
    pub partner: Vec<crate::Rational>,
    pub bracket: Vec<crate::Rational>,
}

#[derive(Clone, Debug)]
pub struct Prop34Outcome {
    pub result: Subspace,
    pub exclusions: Vec<Exclusion>,
    pub notes: Vec<String>,
}

/// [`prop34`] together with a witness for every excluded basis vector of `i0`.
pub fn prop34_explained(
    g: &LieAlgebra,
    i0: &Subspace,
    i1: &Subspace,
    i2: &Subspace,
) -> Prop34Outcome {
    let result = prop34(g, i0, i1, i2);
    let names = g.basis_names();
    let mut exclusions = Vec::new();
    for v in i0.basis().row_vectors() {
        if result.contains_vec(v) {
            continue;
        }
        let witness = i1.basis().row_vectors().find_map(|b| {
            let br = g.bracket(v, b);
            (!i2.contains_vec(&br)).then(|| (b.to_vec(), br))
        });
        if let Some((partner, bracket)) = witness {
            exclusions.push(Exclusion {
                element: v.to_vec(),
                partner,
                bracket,
            });
        }
    }
    let notes = exclusions
        .iter()
        .map(|e| {
            format!(
                "{} excluded: [{}, {}] = {} is not in {}",
                format_vector(&e.element, names),
                format_vector(&e.element, names),
                format_vector(&e.partner, names),
                format_vector(&e.bracket, names),
                format_subspace(i2, names),
            )
        })
        .collect();
    Prop34Outcome {
        result,
        exclusions,
        notes,
    }
}

#[derive(Clone, Debug)]
pub struct LatticeMember {
    /// Canonical basis; its provenance is the first construction that found it.
    pub subspace: Subspace,
    /// Later, non-trivial constructions that produced the same subspace.
    pub aliases: Vec<String>,
    pub essential: bool,
}

impl LatticeMember {
    pub fn provenance(&self) -> &str {
        self.subspace.provenance()
    }
}

#[derive(Clone, Debug)]
pub struct MegaidealLattice {
    pub algebra: LieAlgebra,
    /// Ordered by dimension, then lexicographically by canonical basis.
    pub members: Vec<LatticeMember>,
    pub passes: usize,
    pub fixpoint: bool,
}

impl MegaidealLattice {
    pub fn subspaces(&self) -> impl Iterator<Item = &Subspace> {
        self.members.iter().map(|m| &m.subspace)
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.subspaces().any(|m| m == s)
    }

    /// Members other than `0` and `g`.
    pub fn proper_nontrivial(&self) -> Vec<&Subspace> {
        self.subspaces()
            .filter(|s| !s.is_zero() && !s.is_full())
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub budget: usize,
    /// Enumerate every `(i0, i1, i2)` triple instead of only `dim i2 ≤ dim i1`.
    pub full_prop34: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self {
            budget: 4,
            full_prop34: false,
        }
    }
}

struct Builder<'a> {
    g: &'a LieAlgebra,
    members: Vec<LatticeMember>,
    index: HashMap<Subspace, usize>,
}

impl Builder<'_> {
    /// Records a candidate; `operands` are the inputs of the construction, used
    /// to skip aliases that merely reproduce an operand.
    fn offer(&mut self, s: Subspace, provenance: String, operands: &[&Subspace]) -> bool {
        match self.index.get(&s) {
            Some(&i) => {
                let trivial = operands.iter().any(|o| **o == s);
                let member = &mut self.members[i];
                if !trivial
                    && member.subspace.provenance() != provenance
                    && !member.aliases.contains(&provenance)
                {
                    member.aliases.push(provenance);
                }
                false
            }
            None => {
                self.index.insert(s.clone(), self.members.len());
                self.members.push(LatticeMember {
                    subspace: s.with_provenance(provenance),
                    aliases: Vec::new(),
                    essential: true,
                });
                true
            }
        }
    }

    fn structural(&mut self) {
        let g = self.g;
        let full = g.full();
        let derived = g.derived_series();
        for (k, term) in derived.terms.iter().enumerate().skip(1) {
            let label = match k {
                1 => "g'".to_string(),
                2 => "g''".to_string(),
                3 => "g'''".to_string(),
                _ => format!("g^({k})"),
            };
            self.offer(term.clone(), label, &[]);
        }
        let lower = g.lower_central_series();
        for (k, term) in lower.terms.iter().enumerate().skip(1) {
            self.offer(term.clone(), format!("LCS{}(g)", k + 1), &[]);
        }
        let upper = g.upper_central_series();
        for (k, term) in upper.terms.iter().enumerate() {
            let label = if k == 0 {
                "Z(g)".to_string()
            } else {
                format!("Z{}(g)", k + 1)
            };
            self.offer(term.clone(), label, &[]);
        }
        self.offer(g.radical(), "rad(g)".into(), &[&full]);
        let (nil, status) = g.nilradical_approx();
        if status == NilradicalStatus::Exact {
            self.offer(nil, "nil(g)".into(), &[&full]);
        }
    }

    /// Series, radical and nilradical of a member, viewed as a Lie algebra,
    /// lifted back into `g`.
    fn member_structural(&mut self, s: &Subspace, label: &str) {
        let Ok(sub) = self.g.subalgebra(s) else {
            return;
        };
        let lift = |t: &Subspace| -> Subspace {
            let gens = t
                .basis()
                .row_vectors()
                .map(|coords| s.combine(coords))
                .collect();
            Subspace::span(s.ambient_dim(), gens)
        };
        for (k, term) in sub.upper_central_series().terms.iter().enumerate() {
            let name = if k == 0 {
                format!("Z({label})")
            } else {
                format!("Z{}({label})", k + 1)
            };
            self.offer(lift(term), name, &[s]);
        }
        self.offer(lift(&sub.radical()), format!("rad({label})"), &[s]);
        let (nil, status) = sub.nilradical_approx();
        if status == NilradicalStatus::Exact {
            self.offer(lift(&nil), format!("nil({label})"), &[s]);
        }
    }

    fn pass(&mut self, options: &ClosureOptions) -> usize {
        let g = self.g;
        let snapshot: Vec<(Subspace, String)> = self
            .members
            .iter()
            .map(|m| (m.subspace.clone(), m.provenance().to_string()))
            .collect();
        let before = self.members.len();
        for (s, label) in &snapshot {
            if !s.is_zero() && !s.is_full() {
                self.member_structural(s, label);
            }
        }
        for (ia, (a, la)) in snapshot.iter().enumerate() {
            for (ib, (b, lb)) in snapshot.iter().enumerate() {
                if ia <= ib {
                    self.offer(g.bracket_subspaces(a, b), format!("[{la},{lb}]"), &[a, b]);
                }
                if ia < ib {
                    let sum = a.sum(b).expect("same ambient");
                    self.offer(sum, format!("{la}+{lb}"), &[a, b]);
                    let cap = a.intersect(b).expect("same ambient");
                    self.offer(cap, format!("{la}∩{lb}"), &[a, b]);
                }
                self.offer(g.centralizer(a, b), format!("C_{la}({lb})"), &[a, b]);
                self.offer(g.normalizer(a, b), format!("N_{la}({lb})"), &[a, b]);
            }
        }
        for (i0, l0) in &snapshot {
            for (i1, l1) in &snapshot {
                for (i2, l2) in &snapshot {
                    if !options.full_prop34 && i2.dim() > i1.dim() {
                        continue;
                    }
                    self.offer(
                        prop34(g, i0, i1, i2),
                        format!("P34({l0},{l1},{l2})"),
                        &[i0],
                    );
                }
            }
        }
        self.members.len() - before
    }
}

/// Closes `{0, g} ∪ seeds` under the megaideal constructors.
///
/// Stops at a fixpoint (a pass that adds nothing) or after `budget` passes,
/// in which case [`Error::BudgetExceeded`] carries the partial lattice.
pub fn closure(
    g: &LieAlgebra,
    seeds: &[Subspace],
    options: ClosureOptions,
) -> Result<MegaidealLattice> {
    let n = g.dim();
    for s in seeds {
        if s.ambient_dim() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: s.ambient_dim(),
            });
        }
        if !g.is_ideal(s) {
            return Err(Error::NotAnIdeal(format_subspace(s, g.basis_names())));
        }
    }
    let mut b = Builder {
        g,
        members: Vec::new(),
        index: HashMap::new(),
    };
    b.offer(Subspace::zero(n), "0".into(), &[]);
    b.offer(Subspace::full(n), "g".into(), &[]);
    for (k, s) in seeds.iter().enumerate() {
        let label = if s.provenance().is_empty() {
            format!("seed{}", k + 1)
        } else {
            s.provenance().to_string()
        };
        b.offer(s.clone(), label, &[]);
    }
    b.structural();
    let mut passes = 0;
    let mut fixpoint = false;
    while passes < options.budget {
        passes += 1;
        if b.pass(&options) == 0 {
            fixpoint = true;
            break;
        }
    }
    let mut members = b.members;
    members.sort_by(|x, y| x.subspace.cmp(&y.subspace));
    let lattice = MegaidealLattice {
        algebra: g.clone(),
        members,
        passes,
        fixpoint,
    };
    if fixpoint {
        Ok(lattice)
    } else {
        Err(Error::BudgetExceeded {
            budget: options.budget,
            partial: Box::new(lattice),
        })
    }
}

/// Flags every member that is the sum of two other proper, nonzero members.
/// Nothing is removed.
pub fn essential_filter(lattice: &MegaidealLattice) -> MegaidealLattice {
    let proper: Vec<&Subspace> = lattice.proper_nontrivial();
    let mut out = lattice.clone();
    for member in &mut out.members {
        let m = &member.subspace;
        if m.is_zero() || m.is_full() {
            continue;
        }
        let others: Vec<&&Subspace> = proper.iter().filter(|s| **s != m).collect();
        let is_sum = others.iter().enumerate().any(|(i, a)| {
            others[i + 1..]
                .iter()
                .any(|b| a.sum(b).map(|s| &s == m).unwrap_or(false))
        });
        member.essential = !is_sum;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MegaidealVerdict {
    pub is_ideal: bool,
    /// Necessary for megaideals, not sufficient.
    pub is_derivation_invariant: bool,
    pub notes: Vec<String>,
}

impl MegaidealVerdict {
    pub fn passes(&self) -> bool {
        self.is_ideal && self.is_derivation_invariant
    }
}

pub fn verify_megaideal(g: &LieAlgebra, s: &Subspace) -> MegaidealVerdict {
    verify_with_derivations(g, s, &g.derivations())
}

/// [`verify_megaideal`] against a precomputed derivation basis.
pub fn verify_with_derivations(g: &LieAlgebra, s: &Subspace, derivations: &[Matrix]) -> MegaidealVerdict {
    let names = g.basis_names();
    let mut notes = Vec::new();
    let n = g.dim();
    let mut is_ideal = true;
    'outer: for i in 0..n {
        let e = crate::linalg::unit_vector(n, i);
        for v in s.basis().row_vectors() {
            let b = g.bracket(&e, v);
            if !s.contains_vec(&b) {
                notes.push(format!(
                    "not an ideal: [{}, {}] = {}",
                    names[i],
                    format_vector(v, names),
                    format_vector(&b, names)
                ));
                is_ideal = false;
                break 'outer;
            }
        }
    }
    let moved = derivations
        .iter()
        .position(|d| s.basis().row_vectors().any(|v| !s.contains_vec(&d.mul_vec(v))));
    if let Some(k) = moved {
        notes.push(format!("derivation #{} does not preserve the subspace", k + 1));
    }
    MegaidealVerdict {
        is_ideal,
        is_derivation_invariant: moved.is_none(),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn coord(n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(n, idx)
    }

    #[test]
    fn prop34_special_cases() {
        let m5 = fixtures::m5();
        let g = m5.full();
        assert_eq!(prop34(&m5, &g, &g, &g), g);
        let i = coord(5, &[0, 1]);
        assert_eq!(prop34(&m5, &g, &i, &Subspace::zero(5)), m5.centralizer(&g, &i));
    }

    #[test]
    fn prop34_on_derived_algebra() {
        let m5 = fixtures::m5();
        let d = coord(5, &[0, 1, 2, 3]);
        let out = prop34_explained(&m5, &d, &d, &coord(5, &[0]));
        assert_eq!(out.result, coord(5, &[0, 1]));
        assert_eq!(out.exclusions.len(), 2);
        assert!(out.notes.iter().any(|n| n.contains("[Pt, F2] = 2*F1")), "{:?}", out.notes);
    }

    #[test]
    fn abelian_closure_is_trivial() {
        let g = LieAlgebra::abelian(3);
        let l = closure(&g, &[], ClosureOptions::default()).unwrap();
        assert_eq!(l.members.len(), 2);
    }

    #[test]
    fn m5_closure() {
        let m5 = fixtures::m5();
        let l = closure(&m5, &[], ClosureOptions::default()).unwrap();
        let expected = [
            coord(5, &[0]),
            coord(5, &[0, 1]),
            coord(5, &[0, 1, 2]),
            coord(5, &[0, 1, 2, 3]),
        ];
        let proper: Vec<Subspace> = l.proper_nontrivial().into_iter().cloned().collect();
        assert_eq!(proper, expected);
        assert!(l.passes <= 2);
    }

    #[test]
    fn sl2d_closure_is_trivial() {
        let l = closure(&fixtures::sl2d(), &[], ClosureOptions::default()).unwrap();
        assert!(l.proper_nontrivial().is_empty());
        assert!(l.passes <= 2);
    }

    #[test]
    fn seeds_must_be_ideals() {
        let m5 = fixtures::m5();
        assert!(matches!(
            closure(&m5, &[coord(5, &[1])], ClosureOptions::default()),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn essential_flags() {
        let g = LieAlgebra::abelian(3);
        let l = closure(&g, &[coord(3, &[0]), coord(3, &[1])], ClosureOptions::default()).unwrap();
        let l = essential_filter(&l);
        for m in &l.members {
            let expect = m.subspace != coord(3, &[0, 1]);
            assert_eq!(m.essential, expect, "{:?}", m.subspace);
        }

        let m5 = essential_filter(&closure(&fixtures::m5(), &[], ClosureOptions::default()).unwrap());
        assert!(m5.members.iter().all(|m| m.essential));

        let trivial = essential_filter(&closure(&fixtures::sl2d(), &[], ClosureOptions::default()).unwrap());
        assert!(trivial.members.iter().all(|m| m.essential));
    }

    #[test]
    fn verdicts() {
        let m5 = fixtures::m5();
        let v = verify_megaideal(&m5, &coord(5, &[0, 1, 3]));
        assert!(v.is_ideal && v.is_derivation_invariant);
        let v = verify_megaideal(&m5, &coord(5, &[1]));
        assert!(!v.is_ideal);
        let v = verify_megaideal(&m5, &m5.full());
        assert!(v.passes());
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let m5 = fixtures::m5();
        match closure(&m5, &[], ClosureOptions { budget: 1, full_prop34: false }) {
            Err(Error::BudgetExceeded { partial, budget }) => {
                assert_eq!(budget, 1);
                assert!(!partial.fixpoint);
                assert!(partial.members.len() >= 2);
            }
            other => panic!("{other:?}"),
        }
    }
}
