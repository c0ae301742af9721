//! Automorphism groups of block-triangular shape: adapted bases, the quadratic
//! structure equations and their elimination into a parametrization.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{format_subspace, LieAlgebra};
use crate::linalg::{unit_vector, Matrix, Subspace};
use crate::lattice::MegaidealLattice;
use crate::poly::{Monomial, Poly};
use crate::Rational;

/// Blocks above this size get a symbolic determinant side condition.
const MAX_EXPANDED_DETERMINANT: usize = 8;

#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    /// Columns are the new basis vectors in the original coordinates.
    pub change_of_basis: Matrix,
    pub inverse: Matrix,
    /// Nonzero chain members, ending with `g`.
    pub flag: Vec<Subspace>,
    pub block_sizes: Vec<usize>,
    /// Non-chain lattice members that are coordinate spans in the new basis.
    pub extra_constraints: Vec<Vec<usize>>,
}

impl AdaptedBasis {
    pub fn dim(&self) -> usize {
        self.change_of_basis.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.change_of_basis == Matrix::identity(self.dim())
    }

    /// Block index of each new basis vector.
    pub fn blocks(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &size)| std::iter::repeat_n(b, size))
            .collect()
    }

    /// A subspace given in original coordinates, rewritten in the new basis.
    pub fn to_adapted(&self, s: &Subspace) -> Subspace {
        s.image(&self.inverse)
    }

    /// A subspace given in the new basis, rewritten in original coordinates.
    pub fn to_original(&self, s: &Subspace) -> Subspace {
        s.image(&self.change_of_basis)
    }
}

/// A basis in which a maximal chain of lattice members appears as coordinate
/// prefixes. The chain is built greedily: smallest member strictly above the
/// current one, ties broken by canonical order.
pub fn adapted_basis(g: &LieAlgebra, lattice: &MegaidealLattice) -> AdaptedBasis {
    let n = g.dim();
    let mut members: Vec<&Subspace> = lattice.subspaces().collect();
    members.sort();
    let mut flag: Vec<Subspace> = Vec::new();
    let mut current = Subspace::zero(n);
    while !current.is_full() {
        let next = members
            .iter()
            .filter(|m| m.dim() > current.dim() && m.contains_subspace(&current))
            .min_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)))
            .map(|m| (*m).clone())
            .unwrap_or_else(|| g.full());
        flag.push(next.clone());
        current = next;
    }

    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    let mut block_sizes = Vec::new();
    for member in &flag {
        let before = vectors.len();
        for row in member.basis().row_vectors() {
            let span = Subspace::span(n, vectors.clone());
            if !span.contains_vec(row) {
                vectors.push(row.to_vec());
            }
        }
        block_sizes.push(vectors.len() - before);
    }
    let change_of_basis = Matrix::from_columns(n, &vectors);
    let inverse = change_of_basis.inverse().expect("adapted basis is a basis");

    let mut extra_constraints = Vec::new();
    for m in lattice.subspaces() {
        if m.is_zero() || m.is_full() || flag.contains(m) {
            continue;
        }
        if let Some(idx) = m.image(&inverse).coordinate_indices() {
            extra_constraints.push(idx);
        }
    }
    AdaptedBasis {
        change_of_basis,
        inverse,
        flag,
        block_sizes,
        extra_constraints,
    }
}

#[derive(Clone, Debug)]
pub struct AutShape {
    pub n: usize,
    /// `pattern[i][j]` is the unknown index of `a_ij`, or `None` for a forced zero.
    pub pattern: Vec<Vec<Option<usize>>>,
    pub unknowns: Vec<String>,
    /// Polynomials required to be nonzero.
    pub side_conditions: Vec<Poly>,
    /// Diagonal blocks too large to expand; their determinants must not vanish.
    pub symbolic_determinants: Vec<Vec<usize>>,
    pub change_of_basis: Matrix,
    pub inverse: Matrix,
}

impl AutShape {
    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn unknown_index(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|u| u == name)
    }

    /// The generic matrix: unknowns where allowed, zero elsewhere.
    pub fn generic_matrix(&self) -> Vec<Vec<Poly>> {
        let m = self.unknowns.len();
        self.pattern
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map_or_else(|| Poly::zero(m), |u| Poly::var(m, u)))
                    .collect()
            })
            .collect()
    }

    /// Rows of `*` (unknown) and `0` (forced zero).
    pub fn pattern_rows(&self) -> Vec<String> {
        self.pattern
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| if e.is_some() { "*" } else { "0" })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

fn unknown_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("a{}{}", i + 1, j + 1)
    } else {
        format!("a{}_{}", i + 1, j + 1)
    }
}

fn determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    fn go(m: &[Vec<Poly>], row: usize, used: u32, memo: &mut HashMap<u32, Poly>, nvars: usize) -> Poly {
        if row == m.len() {
            return Poly::one(nvars);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = Poly::zero(nvars);
        let mut sign = true;
        for (col, entry) in m[row].iter().enumerate() {
            if used & (1 << col) != 0 {
                continue;
            }
            if !entry.is_zero() {
                let minor = go(m, row + 1, used | (1 << col), memo, nvars);
                let term = entry * &minor;
                acc = if sign { &acc + &term } else { &acc - &term };
            }
            sign = !sign;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(m, 0, 0, &mut HashMap::new(), nvars)
}

/// Unknown pattern permitted by the flag: `a_ij` may be nonzero only when the
/// block of `i` does not exceed the block of `j`, and no extra coordinate
/// constraint forbids it.
pub fn shape_from_flag(basis: &AdaptedBasis) -> AutShape {
    let n = basis.dim();
    let blocks = basis.blocks();
    let allowed = |i: usize, j: usize| {
        blocks[i] <= blocks[j]
            && basis
                .extra_constraints
                .iter()
                .all(|k| !(k.contains(&j) && !k.contains(&i)))
    };
    let mut pattern = vec![vec![None; n]; n];
    let mut unknowns = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if allowed(i, j) {
                pattern[i][j] = Some(unknowns.len());
                unknowns.push(unknown_name(n, i, j));
            }
        }
    }
    let mut shape = AutShape {
        n,
        pattern,
        unknowns,
        side_conditions: Vec::new(),
        symbolic_determinants: Vec::new(),
        change_of_basis: basis.change_of_basis.clone(),
        inverse: basis.inverse.clone(),
    };
    let generic = shape.generic_matrix();
    let nvars = shape.unknowns.len();
    let mut start = 0;
    for &size in &basis.block_sizes {
        let idx: Vec<usize> = (start..start + size).collect();
        start += size;
        if size > MAX_EXPANDED_DETERMINANT {
            shape.symbolic_determinants.push(idx);
            continue;
        }
        let block: Vec<Vec<Poly>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| generic[i][j].clone()).collect())
            .collect();
        shape.side_conditions.push(determinant(&block, nvars));
    }
    shape
}

#[derive(Clone, Debug)]
pub struct PolySystem {
    pub shape: AutShape,
    pub equations: Vec<Poly>,
    pub inequations: Vec<Poly>,
}

impl PolySystem {
    pub fn unknowns(&self) -> &[String] {
        &self.shape.unknowns
    }
}

/// The algebra rewritten in the adapted basis, with basis names kept when the
/// change of basis is trivial.
pub fn adapted_algebra(g: &LieAlgebra, basis: &AdaptedBasis) -> Result<LieAlgebra> {
    let names = if basis.is_identity() {
        g.basis_names().to_vec()
    } else {
        (1..=g.dim()).map(|i| format!("b{i}")).collect()
    };
    g.change_basis(&basis.change_of_basis, names)
}

/// `A[Q_i, Q_j] − [AQ_i, AQ_j]`, componentwise over `i < j`, for `g` written
/// in the coordinates of `shape`. Identically zero equations are dropped.
pub fn structure_equations(g: &LieAlgebra, shape: &AutShape) -> PolySystem {
    let n = g.dim();
    let m = shape.unknowns.len();
    let a = shape.generic_matrix();
    let mut equations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = g.basis_bracket(i, j);
            for k in 0..n {
                let mut eq = Poly::zero(m);
                for (l, c) in cij.iter().enumerate() {
                    if !c.is_zero() {
                        eq = &eq + &a[k][l].scale(c);
                    }
                }
                for p in 0..n {
                    if a[p][i].is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let c = g.structure_constant(p, q, k);
                        if c.is_zero() || a[q][j].is_zero() {
                            continue;
                        }
                        eq = &eq - &(&a[p][i] * &a[q][j]).scale(c);
                    }
                }
                if !eq.is_zero() {
                    equations.push(eq);
                }
            }
        }
    }
    PolySystem {
        equations,
        inequations: shape.side_conditions.clone(),
        shape: shape.clone(),
    }
}

#[derive(Clone, Debug)]
pub struct AutParametrization {
    pub shape: AutShape,
    /// `(unknown, value)` sorted by unknown; values use free parameters only.
    pub assignments: Vec<(usize, Poly)>,
    pub free_parameters: Vec<usize>,
    pub residual_equations: Vec<Poly>,
    pub side_conditions: Vec<Poly>,
    /// One line per division performed.
    pub audit: Vec<String>,
    /// Set when a side condition was forced to vanish or an equation became a
    /// nonzero constant.
    pub inconsistent: bool,
}

impl AutParametrization {
    pub fn unknowns(&self) -> &[String] {
        &self.shape.unknowns
    }

    pub fn is_solved(&self) -> bool {
        self.residual_equations.is_empty() && !self.inconsistent
    }

    pub fn assignment(&self, name: &str) -> Option<&Poly> {
        let u = self.shape.unknown_index(name)?;
        self.assignments.iter().find(|(v, _)| *v == u).map(|(_, p)| p)
    }

    pub fn free_parameter_names(&self) -> Vec<&str> {
        self.free_parameters
            .iter()
            .map(|&u| self.shape.unknowns[u].as_str())
            .collect()
    }

    /// Value of an unknown in terms of the free parameters.
    pub fn value(&self, u: usize) -> Poly {
        self.assignments
            .iter()
            .find(|(v, _)| *v == u)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Poly::var(self.shape.unknowns.len(), u))
    }

    /// The parametrized matrix in adapted coordinates.
    pub fn matrix(&self) -> Vec<Vec<Poly>> {
        let m = self.shape.unknowns.len();
        self.shape
            .pattern
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map_or_else(|| Poly::zero(m), |u| self.value(u)))
                    .collect()
            })
            .collect()
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format(&self.shape.unknowns)
    }

    /// Point in unknown space for the given free-parameter values.
    fn point(&self, free_values: &[Rational]) -> Result<Vec<Rational>> {
        if free_values.len() != self.free_parameters.len() {
            return Err(Error::LengthMismatch {
                expected: self.free_parameters.len(),
                got: free_values.len(),
            });
        }
        let mut point = vec![Rational::zero(); self.shape.unknowns.len()];
        for (&u, v) in self.free_parameters.iter().zip(free_values) {
            point[u] = v.clone();
        }
        Ok(point)
    }

    /// Do the side conditions hold at these parameter values?
    pub fn admissible(&self, free_values: &[Rational]) -> Result<bool> {
        let point = self.point(free_values)?;
        Ok(self.side_conditions.iter().all(|c| !c.eval(&point).is_zero()))
    }

    /// The automorphism in original coordinates for given parameter values.
    pub fn instantiate(&self, free_values: &[Rational]) -> Result<Matrix> {
        let point = self.point(free_values)?;
        let n = self.shape.n;
        let mut a = Matrix::zeros(n, n);
        for (i, row) in self.matrix().iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                a.set(i, j, p.eval(&point));
            }
        }
        Ok(self
            .shape
            .change_of_basis
            .mul(&a)
            .mul(&self.shape.inverse))
    }
}

fn nonzero_variables(inequations: &[Poly]) -> BTreeSet<usize> {
    inequations
        .iter()
        .filter_map(|p| p.as_term())
        .flat_map(|(_, m)| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        })
        .collect()
}

fn admissible_divisor(c: &Poly, nonzero: &BTreeSet<usize>) -> bool {
    match c.as_term() {
        Some((_, m)) => m
            .exponents()
            .iter()
            .enumerate()
            .all(|(i, e)| *e == 0 || nonzero.contains(&i)),
        None => false,
    }
}

/// Largest monomial in the known-nonzero variables dividing every term.
fn nonzero_content(p: &Poly, nonzero: &BTreeSet<usize>) -> Monomial {
    let mut exps = vec![0u32; p.nvars()];
    let mut first = true;
    for (m, _) in p.terms() {
        for (i, e) in m.exponents().iter().enumerate() {
            let e = if nonzero.contains(&i) { *e } else { 0 };
            exps[i] = if first { e } else { exps[i].min(e) };
        }
        first = false;
    }
    Monomial::from_exponents(exps)
}

/// Repeatedly solves an equation that is linear in a single unknown whose
/// coefficient is a nonzero rational or a monomial in variables known to be
/// nonzero, then substitutes everywhere. Whatever cannot be eliminated is
/// returned as residual equations.
pub fn triangular_solve(sys: &PolySystem) -> AutParametrization {
    let names = &sys.shape.unknowns;
    let m = names.len();
    let one = Rational::one();
    let mut equations = sys.equations.clone();
    let mut inequations = sys.inequations.clone();
    let mut assigned: Vec<Option<Poly>> = vec![None; m];
    let mut audit = Vec::new();
    let mut inconsistent = false;

    loop {
        let nonzero = nonzero_variables(&inequations);
        let mut normalized: Vec<Poly> = Vec::new();
        for eq in &equations {
            if eq.is_zero() {
                continue;
            }
            let content = nonzero_content(eq, &nonzero);
            let eq = if content.is_one() {
                eq.clone()
            } else {
                let divisor = Poly::monomial(m, one.clone(), content.clone());
                audit.push(format!(
                    "divided {} = 0 by {}",
                    eq.format(names),
                    divisor.format(names)
                ));
                eq.div_term(&one, &content).expect("content divides")
            };
            let eq = eq.monic();
            if !normalized.contains(&eq) {
                normalized.push(eq);
            }
        }
        equations = normalized;
        if equations.iter().any(|e| e.constant_value().is_some()) {
            inconsistent = true;
            break;
        }

        type Key = (u8, usize, usize, u32, usize);
        let mut best: Option<(Key, usize, Poly, Poly)> = None;
        for (ei, eq) in equations.iter().enumerate() {
            for u in eq.vars_used() {
                if eq.degree_in(u) != 1 {
                    continue;
                }
                let parts = eq.coefficients_in(u);
                let coeff = &parts[1];
                if !admissible_divisor(coeff, &nonzero) {
                    continue;
                }
                let (c, mono) = coeff.as_term().expect("single term");
                let Some(solution) = (-&parts[0]).div_term(c, mono) else {
                    continue;
                };
                let key = (
                    u8::from(!mono.is_one()),
                    u,
                    solution.len(),
                    solution.degree(),
                    ei,
                );
                if best.as_ref().is_none_or(|(k, ..)| key < *k) {
                    best = Some((key, u, solution, coeff.clone()));
                }
            }
        }
        let Some((_, u, solution, coeff)) = best else {
            break;
        };
        if coeff.constant_value() != Some(one.clone()) {
            audit.push(format!(
                "solved for {} dividing by {}",
                names[u],
                coeff.format(names)
            ));
        }
        for eq in &mut equations {
            *eq = eq.substitute(u, &solution);
        }
        for slot in assigned.iter_mut().flatten() {
            *slot = slot.substitute(u, &solution);
        }
        for ineq in &mut inequations {
            *ineq = ineq.substitute(u, &solution);
        }
        assigned[u] = Some(solution);
        if inequations.iter().any(Poly::is_zero) {
            inconsistent = true;
            break;
        }
    }

    let residual: Vec<Poly> = equations.into_iter().filter(|e| !e.is_zero()).collect();
    let mut side_conditions: Vec<Poly> = Vec::new();
    for c in inequations {
        if c.constant_value().is_none() && !side_conditions.contains(&c) {
            side_conditions.push(c);
        }
    }
    let assignments: Vec<(usize, Poly)> = assigned
        .iter()
        .enumerate()
        .filter_map(|(u, p)| p.clone().map(|p| (u, p)))
        .collect();
    let free_parameters = (0..m).filter(|&u| assigned[u].is_none()).collect();
    AutParametrization {
        shape: sys.shape.clone(),
        assignments,
        free_parameters,
        residual_equations: residual,
        side_conditions,
        audit,
        inconsistent,
    }
}

fn require_solved(param: &AutParametrization) -> Result<()> {
    if param.residual_equations.is_empty() {
        Ok(())
    } else {
        Err(Error::ResidualSystem(param.residual_equations.len()))
    }
}

/// Is `s` (original coordinates) mapped into itself by every automorphism of
/// the parametrization, identically in the parameters?
pub fn check_invariant(param: &AutParametrization, s: &Subspace) -> Result<bool> {
    require_solved(param)?;
    let local = s.image(&param.shape.inverse);
    let a = param.matrix();
    let n = param.shape.n;
    for v in local.basis().row_vectors() {
        let image: Vec<Poly> = (0..n)
            .map(|i| {
                a[i].iter().zip(v).fold(Poly::zero(param.unknowns().len()), |acc, (p, x)| {
                    if x.is_zero() {
                        acc
                    } else {
                        &acc + &p.scale(x)
                    }
                })
            })
            .collect();
        let monomials: BTreeSet<Monomial> = image
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect();
        for mono in monomials {
            let w: Vec<Rational> = image.iter().map(|p| p.coefficient(&mono)).collect();
            if !local.contains_vec(&w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All coordinate spans of the adapted basis (including `0` and `g`) that are
/// invariant under the parametrization, in original coordinates and
/// canonical order.
pub fn enumerate_coordinate_megaideals(
    g: &LieAlgebra,
    param: &AutParametrization,
    basis: &AdaptedBasis,
    max_dim: usize,
) -> Result<Vec<Subspace>> {
    require_solved(param)?;
    let n = g.dim();
    if n > max_dim || n >= usize::BITS as usize {
        return Err(Error::EnumerationTooLarge { dim: n, cap: max_dim });
    }
    let a = param.matrix();
    let mut out = Vec::new();
    for mask in 0usize..(1 << n) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let invariant = (0..n)
            .filter(|&j| inside(j))
            .all(|j| (0..n).filter(|&i| !inside(i)).all(|i| a[i][j].is_zero()));
        if invariant {
            let idx: Vec<usize> = (0..n).filter(|&i| inside(i)).collect();
            let local = Subspace::coordinate(n, &idx);
            let s = basis.to_original(&local);
            let label = format_subspace(&s, g.basis_names());
            out.push(s.with_provenance(label));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct InnerCheck {
    pub element: String,
    pub t: Rational,
    pub matched: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct InnerConsistencyReport {
    pub checks: Vec<InnerCheck>,
    /// Basis elements skipped because their adjoint is not nilpotent.
    pub skipped: Vec<String>,
}

impl InnerConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.matched)
    }
}

/// Checks that `exp(t · ad x)` lies in the parametrization for every basis
/// element `x` with nilpotent adjoint and `t ∈ {1, −1, 1/2}`.
pub fn inner_consistency(g: &LieAlgebra, param: &AutParametrization) -> InnerConsistencyReport {
    let n = g.dim();
    let names = param.unknowns();
    let ts = [
        Rational::one(),
        -Rational::one(),
        Rational::new(1.into(), 2.into()),
    ];
    let mut report = InnerConsistencyReport::default();
    for i in 0..n {
        let x = unit_vector(n, i);
        let element = g.basis_names()[i].clone();
        for t in &ts {
            let e = match g.exp_ad_nilpotent(&x, t) {
                Ok(e) => e,
                Err(_) => {
                    report.skipped.push(element.clone());
                    break;
                }
            };
            let local = param.shape.inverse.mul(&e).mul(&param.shape.change_of_basis);
            let mut point = vec![Rational::zero(); names.len()];
            for &u in &param.free_parameters {
                let (r, c) = position(&param.shape, u);
                point[u] = local.get(r, c).clone();
            }
            let mut failures = Vec::new();
            for (r, row) in param.shape.pattern.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    let expected = match entry {
                        Some(u) => param.value(*u).eval(&point),
                        None => Rational::zero(),
                    };
                    if *local.get(r, c) != expected {
                        failures.push(format!("entry ({}, {})", r + 1, c + 1));
                    }
                }
            }
            for cond in &param.side_conditions {
                if cond.eval(&point).is_zero() {
                    failures.push(format!("{} vanishes", cond.format(names)));
                }
            }
            for res in &param.residual_equations {
                if !res.eval(&point).is_zero() {
                    failures.push(format!("{} != 0", res.format(names)));
                }
            }
            let detail = if failures.is_empty() {
                param
                    .free_parameters
                    .iter()
                    .map(|&u| format!("{}={}", names[u], point[u]))
                    .collect::<Vec<_>>()
                    .join(", ")
            } else {
                failures.join("; ")
            };
            report.checks.push(InnerCheck {
                element: element.clone(),
                t: t.clone(),
                matched: failures.is_empty(),
                detail,
            });
        }
    }
    report
}

fn position(shape: &AutShape, u: usize) -> (usize, usize) {
    for (r, row) in shape.pattern.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if *e == Some(u) {
                return (r, c);
            }
        }
    }
    unreachable!("unknown {u} not in pattern")
}

/// The whole automorphism stage for an algebra and its lattice.
#[derive(Clone, Debug)]
pub struct AutAnalysis {
    pub basis: AdaptedBasis,
    pub system: PolySystem,
    pub parametrization: AutParametrization,
}

pub fn analyze_automorphisms(g: &LieAlgebra, lattice: &MegaidealLattice) -> Result<AutAnalysis> {
    let basis = adapted_basis(g, lattice);
    let shape = shape_from_flag(&basis);
    let local = adapted_algebra(g, &basis)?;
    let system = structure_equations(&local, &shape);
    let parametrization = triangular_solve(&system);
    Ok(AutAnalysis {
        basis,
        system,
        parametrization,
    })
}
