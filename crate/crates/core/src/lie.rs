//! Lie algebras given by structure constants `[Q_i, Q_j] = c_{ij}^k Q_k`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{unit_vector, zero_vector, Matrix, Subspace};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis_names: Vec<String>,
    // c[(i * n + j) * n + k]
    c: Vec<Rational>,
}

/// Nonzero bracket of two basis elements, as used by [`LieAlgebra::from_brackets`].
#[derive(Clone, Debug)]
pub struct BasisBracket {
    pub left: usize,
    pub right: usize,
    pub result: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiResidual {
    pub indices: [usize; 3],
    pub component: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(i, j, k)` with `c_{ij}^k ≠ -c_{ji}^k`, listed once with `i ≤ j`.
    pub antisymmetry_violations: Vec<[usize; 3]>,
    pub jacobi_residuals: Vec<JacobiResidual>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_residuals.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower_central",
            SeriesKind::UpperCentral => "upper_central",
        }
    }
}

/// Terms of a structural series up to the first repetition.
///
/// Derived and lower central series start at `g`; the upper central series
/// starts at the center. `stabilized` is set when the series becomes stationary
/// before reaching its natural end (`0` for the descending series, `g` for the
/// upper central series).
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilradicalStatus {
    Exact,
    Stalled,
}

impl LieAlgebra {
    /// Builds an algebra from a raw tensor without any checks; use
    /// [`LieAlgebra::validate`] afterwards.
    pub fn from_tensor(name: impl Into<String>, basis_names: Vec<String>, c: Vec<Rational>) -> Self {
        let n = basis_names.len();
        assert_eq!(c.len(), n * n * n, "structure tensor has wrong size");
        Self {
            name: name.into(),
            basis_names,
            c,
        }
    }

    /// Builds an algebra from its nonzero basis brackets, filling in the
    /// antisymmetric counterparts.
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: &[BasisBracket],
    ) -> Result<Self> {
        let n = basis_names.len();
        let mut c = vec![Rational::zero(); n * n * n];
        let mut seen = vec![false; n * n];
        for b in brackets {
            if b.left >= n || b.right >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket index out of range: ({}, {})",
                    b.left, b.right
                )));
            }
            if b.result.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: b.result.len(),
                });
            }
            let (i, j) = (b.left, b.right);
            if i == j {
                if b.result.iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!(
                        "[{0}, {0}] must vanish",
                        basis_names[i]
                    )));
                }
                continue;
            }
            for (slot, value) in [((i, j), b.result.clone()), ((j, i), b.result.iter().map(|x| -x).collect())] {
                let (p, q) = slot;
                let range = (p * n + q) * n..(p * n + q + 1) * n;
                if seen[p * n + q] {
                    if c[range] != value[..] {
                        return Err(Error::InvalidAlgebra(format!(
                            "inconsistent brackets for [{}, {}]",
                            basis_names[i], basis_names[j]
                        )));
                    }
                } else {
                    c[range].clone_from_slice(&value);
                    seen[p * n + q] = true;
                }
            }
        }
        Ok(Self {
            name: name.into(),
            basis_names,
            c,
        })
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        Self::from_tensor(format!("abelian{n}"), names, vec![Rational::zero(); n * n * n])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    /// Coordinates of `[Q_i, Q_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim();
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Nonzero brackets `[Q_i, Q_j]` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<BasisBracket> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let r = self.basis_bracket(i, j);
                if r.iter().any(|x| !x.is_zero()) {
                    out.push(BasisBracket {
                        left: i,
                        right: j,
                        result: r.to_vec(),
                    });
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.structure_constant(i, j, k) + self.structure_constant(j, i, k);
                    if !s.is_zero() {
                        report.antisymmetry_violations.push([i, j, k]);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut sum = Rational::zero();
                        for k in 0..n {
                            for (p, q, r) in [(i, j, l), (j, l, i), (l, i, j)] {
                                let a = self.structure_constant(p, q, k);
                                if a.is_zero() {
                                    continue;
                                }
                                let b = self.structure_constant(k, r, m);
                                if !b.is_zero() {
                                    sum += a * b;
                                }
                            }
                        }
                        if !sum.is_zero() {
                            report.jacobi_residuals.push(JacobiResidual {
                                indices: [i, j, l],
                                component: m,
                                value: sum,
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Matrix of `y ↦ [x, y]`; column `j` holds `[x, Q_j]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let columns: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket(x, &unit_vector(n, j))).collect();
        Matrix::from_columns(n, &columns)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vector(self.dim(), i))
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for x in a.basis().row_vectors() {
            for y in b.basis().row_vectors() {
                gens.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim(), gens)
    }

    /// `{ x ∈ within : [x, b] ∈ target for every b ∈ of }`, by one linear solve.
    pub fn bracket_preimage(&self, within: &Subspace, of: &Subspace, target: &Subspace) -> Subspace {
        let n = self.dim();
        let annihilator = target.basis().kernel();
        let w = within.basis_vectors();
        let mut rows = Vec::new();
        for b in of.basis().row_vectors() {
            let images: Vec<Vec<Rational>> = w.iter().map(|x| self.bracket(x, b)).collect();
            for h in annihilator.basis().row_vectors() {
                rows.push(
                    images
                        .iter()
                        .map(|img| dot(h, img))
                        .collect::<Vec<_>>(),
                );
            }
        }
        if rows.is_empty() || w.is_empty() {
            return within.clone().with_provenance("");
        }
        let coeffs = Matrix::from_rows(w.len(), rows).kernel();
        let gens = coeffs
            .basis_vectors()
            .into_iter()
            .map(|a| within.combine(&a))
            .collect();
        Subspace::span(n, gens)
    }

    pub fn center(&self) -> Subspace {
        let g = self.full();
        self.bracket_preimage(&g, &g, &Subspace::zero(self.dim()))
    }

    pub fn centralizer(&self, within: &Subspace, of: &Subspace) -> Subspace {
        self.bracket_preimage(within, of, &Subspace::zero(self.dim()))
    }

    pub fn normalizer(&self, within: &Subspace, of: &Subspace) -> Subspace {
        self.bracket_preimage(within, of, of)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_subspaces(&self.full(), s))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_subspaces(s, s))
    }

    pub fn derived_series(&self) -> SeriesReport {
        self.descending(SeriesKind::Derived)
    }

    pub fn lower_central_series(&self) -> SeriesReport {
        self.descending(SeriesKind::LowerCentral)
    }

    fn descending(&self, kind: SeriesKind) -> SeriesReport {
        let g = self.full();
        let mut terms = vec![g.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = match kind {
                SeriesKind::Derived => self.bracket_subspaces(last, last),
                _ => self.bracket_subspaces(&g, last),
            };
            if &next == last {
                let stabilized = !next.is_zero();
                return SeriesReport {
                    kind,
                    terms,
                    stabilized,
                };
            }
            terms.push(next);
            if terms.last().unwrap().is_zero() {
                return SeriesReport {
                    kind,
                    terms,
                    stabilized: false,
                };
            }
        }
    }

    /// `Z_{k+1}` is the preimage of the center of `g / Z_k`.
    pub fn upper_central_series(&self) -> SeriesReport {
        let n = self.dim();
        let mut current = Subspace::zero(n);
        let mut terms = Vec::new();
        loop {
            let (quot, _) = self
                .quotient(&current)
                .expect("upper central series terms are ideals");
            let non_pivots: Vec<usize> = (0..n).filter(|c| !current.pivots().contains(c)).collect();
            let mut gens = current.basis_vectors();
            for v in quot.center().basis().row_vectors() {
                let mut lift = zero_vector(n);
                for (coord, &col) in v.iter().zip(&non_pivots) {
                    lift[col] = coord.clone();
                }
                gens.push(lift);
            }
            let next = Subspace::span(n, gens);
            if next == current {
                if terms.is_empty() {
                    terms.push(next.clone());
                }
                return SeriesReport {
                    kind: SeriesKind::UpperCentral,
                    terms,
                    stabilized: !next.is_full(),
                };
            }
            terms.push(next.clone());
            if next.is_full() {
                return SeriesReport {
                    kind: SeriesKind::UpperCentral,
                    terms,
                    stabilized: false,
                };
            }
            current = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().terms.last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().terms.last().is_some_and(Subspace::is_zero)
    }

    /// Quotient by an ideal on the complement spanned by the non-pivot
    /// coordinates of the ideal, with the projection onto those coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Matrix)> {
        let n = self.dim();
        if ideal.ambient_dim() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: ideal.ambient_dim(),
            });
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal(format_subspace(ideal, &self.basis_names)));
        }
        let keep: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
        let m = keep.len();
        let reduce = |v: &[Rational]| -> Vec<Rational> {
            let mut r = v.to_vec();
            for (row, &p) in ideal.pivots().iter().enumerate() {
                let f = r[p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, b) in r.iter_mut().zip(ideal.basis().row(row)) {
                    *x -= &f * b;
                }
            }
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let columns: Vec<Vec<Rational>> = (0..n).map(|i| reduce(&unit_vector(n, i))).collect();
        let projection = Matrix::from_columns(m, &columns);
        let mut c = Vec::with_capacity(m * m * m);
        for &a in &keep {
            for &b in &keep {
                c.extend(reduce(self.basis_bracket(a, b)));
            }
        }
        let names = keep.iter().map(|&k| self.basis_names[k].clone()).collect();
        Ok((
            LieAlgebra::from_tensor(format!("{}/ideal", self.name), names, c),
            projection,
        ))
    }

    /// `K[i][j] = trace(ad_{Q_i} ∘ ad_{Q_j})`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = trace_of_product(&ads[i], &ads[j]);
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    /// Radical as the Killing-orthogonal complement of the derived algebra.
    pub fn radical(&self) -> Subspace {
        let k = self.killing_form();
        let derived = self.bracket_subspaces(&self.full(), &self.full());
        let rows: Vec<Vec<Rational>> = derived.basis().row_vectors().map(|d| k.mul_vec(d)).collect();
        if rows.is_empty() {
            return self.full();
        }
        Matrix::from_rows(self.dim(), rows).kernel()
    }

    /// Shrinks the radical by trace-form orthogonality until stable; the
    /// result always contains the nilradical and is exact when nilpotent.
    pub fn nilradical_approx(&self) -> (Subspace, NilradicalStatus) {
        let n = self.dim();
        let mut current = self.radical();
        loop {
            let members = current.basis_vectors();
            let ads: Vec<Matrix> = members.iter().map(|v| self.ad(v)).collect();
            let mut rows = Vec::new();
            for ay in &ads {
                rows.push(ads.iter().map(|ax| trace_of_product(ax, ay)).collect::<Vec<_>>());
            }
            let next = if members.is_empty() {
                current.clone()
            } else {
                let coeffs = Matrix::from_rows(members.len(), rows).kernel();
                Subspace::span(
                    n,
                    coeffs
                        .basis_vectors()
                        .into_iter()
                        .map(|a| current.combine(&a))
                        .collect(),
                )
            };
            if next == current {
                break;
            }
            current = next;
        }
        let status = if self.is_nilpotent_subalgebra(&current) {
            NilradicalStatus::Exact
        } else {
            NilradicalStatus::Stalled
        };
        (current, status)
    }

    fn is_nilpotent_subalgebra(&self, s: &Subspace) -> bool {
        let mut term = s.clone();
        loop {
            if term.is_zero() {
                return true;
            }
            let next = self.bracket_subspaces(s, &term);
            if next == term {
                return false;
            }
            term = next;
        }
    }

    /// Basis of the derivation algebra; `D e_j = Σ_i D[i][j] e_i`.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim();
        let unknown = |i: usize, j: usize| i * n + j;
        let mut rows = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for m in 0..n {
                    let mut row = vec![Rational::zero(); n * n];
                    for k in 0..n {
                        let c = self.structure_constant(a, b, k);
                        if !c.is_zero() {
                            row[unknown(m, k)] += c;
                        }
                    }
                    for i in 0..n {
                        let c1 = self.structure_constant(i, b, m);
                        if !c1.is_zero() {
                            row[unknown(i, a)] -= c1;
                        }
                        let c2 = self.structure_constant(a, i, m);
                        if !c2.is_zero() {
                            row[unknown(i, b)] -= c2;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let space = if rows.is_empty() {
            Subspace::full(n * n)
        } else {
            Matrix::from_rows(n * n, rows).kernel()
        };
        space
            .basis_vectors()
            .into_iter()
            .map(|v| Matrix::new(n, n, v))
            .collect()
    }

    /// `exp(t · ad_x)` for ad-nilpotent `x`, as a finite exact sum.
    pub fn exp_ad_nilpotent(&self, x: &[Rational], t: &Rational) -> Result<Matrix> {
        let n = self.dim();
        let a = self.ad(x);
        if !a.pow(n as u32).is_zero() {
            return Err(Error::NotNilpotent(format_vector(x, &self.basis_names)));
        }
        let mut out = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..n.max(1) {
            let factor = t / Rational::from_integer(k.into());
            term = term.mul(&a).scale(&factor);
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Is `a` a bracket-preserving linear map (columns are images)?
    pub fn preserves_brackets(&self, a: &Matrix) -> bool {
        let n = self.dim();
        let images: Vec<Vec<Rational>> = (0..n).map(|j| a.column(j)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| a.mul_vec(self.basis_bracket(i, j)) == self.bracket(&images[i], &images[j]))
        })
    }

    pub fn satisfies_leibniz(&self, d: &Matrix) -> bool {
        let n = self.dim();
        let images: Vec<Vec<Rational>> = (0..n).map(|j| d.column(j)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = d.mul_vec(self.basis_bracket(i, j));
                let e_i = unit_vector(n, i);
                let e_j = unit_vector(n, j);
                let r1 = self.bracket(&images[i], &e_j);
                let r2 = self.bracket(&e_i, &images[j]);
                lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a + b)
            })
        })
    }

    /// Structure constants of a subalgebra in its canonical basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlgebra> {
        let basis = s.basis_vectors();
        let m = basis.len();
        let mut c = Vec::with_capacity(m * m * m);
        for x in &basis {
            for y in &basis {
                let b = self.bracket(x, y);
                let coords = s.coordinates(&b).ok_or_else(|| {
                    Error::InvalidAlgebra(format!(
                        "{} is not closed under the bracket",
                        format_subspace(s, &self.basis_names)
                    ))
                })?;
                c.extend(coords);
            }
        }
        let names = basis.iter().map(|v| format_vector(v, &self.basis_names)).collect();
        Ok(LieAlgebra::from_tensor(
            format!("{}|sub", self.name),
            names,
            c,
        ))
    }

    /// Rewrites the structure constants in the basis given by the columns of
    /// the invertible matrix `p`.
    pub fn change_basis(&self, p: &Matrix, names: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidAlgebra("change of basis is singular".into()))?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| p.column(j)).collect();
        let mut c = Vec::with_capacity(n * n * n);
        for a in &cols {
            for b in &cols {
                c.extend(inv.mul_vec(&self.bracket(a, b)));
            }
        }
        Ok(LieAlgebra::from_tensor(self.name.clone(), names, c))
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> Rational {
    let n = a.rows();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if !x.is_zero() {
                let y = b.get(k, i);
                if !y.is_zero() {
                    t += x * y;
                }
            }
        }
    }
    t
}

/// Renders a coordinate vector as a linear combination of basis names.
pub fn format_vector(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (x, name) in v.iter().zip(names) {
        if x.is_zero() {
            continue;
        }
        let neg = x < &Rational::zero();
        let abs = if neg { -x.clone() } else { x.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_subspace(s: &Subspace, names: &[String]) -> String {
    let parts: Vec<String> = s.basis().row_vectors().map(|v| format_vector(v, names)).collect();
    format!("<{}>", parts.join(", "))
}
