//! Polynomial vector fields: brackets, the wave-equation equivalence family,
//! structure-constant extraction and push-forwards under polynomial maps.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{format_vector, LieAlgebra};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;

/// Variables of the equivalence family, with `u_x` a formal coordinate.
pub const FAMILY_VARIABLES: [&str; 6] = ["t", "x", "u", "u_x", "f", "g"];

const T: usize = 0;
const X: usize = 1;
const U: usize = 2;
const UX: usize = 3;
const F: usize = 4;
const G: usize = 5;

pub fn family_variables() -> Vec<String> {
    FAMILY_VARIABLES.iter().map(|s| s.to_string()).collect()
}

/// `Σ_i components[i] ∂_{variables[i]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    variables: Vec<String>,
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(variables: Vec<String>, components: Vec<Poly>) -> Self {
        assert_eq!(variables.len(), components.len(), "one component per variable");
        assert!(
            components.iter().all(|p| p.nvars() == variables.len()),
            "components must live in the ring of the declared variables"
        );
        Self {
            variables,
            components,
        }
    }

    pub fn zero(variables: Vec<String>) -> Self {
        let n = variables.len();
        Self::new(variables, vec![Poly::zero(n); n])
    }

    /// Builds a field from `(variable, polynomial text)` pairs.
    pub fn parse(variables: &[String], components: &[(&str, &str)]) -> Result<Self> {
        let mut comps = vec![Poly::zero(variables.len()); variables.len()];
        for (var, text) in components {
            let idx = variables
                .iter()
                .position(|v| v == var)
                .ok_or_else(|| Error::Format(format!("unknown variable {var:?}")))?;
            comps[idx] = Poly::parse(text, variables)?;
        }
        Ok(Self::new(variables.to_vec(), comps))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, var: &str) -> Option<&Poly> {
        self.variables
            .iter()
            .position(|v| v == var)
            .map(|i| &self.components[i])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// The derivation `p ↦ Σ_j Q^j ∂_j p`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero(p.nvars());
        for (j, q) in self.components.iter().enumerate() {
            if q.is_zero() || !p.uses_var(j) {
                continue;
            }
            acc = &acc + &(q * &p.derivative(j));
        }
        acc
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::Format(format!(
                "vector fields over different variables: {:?} vs {:?}",
                self.variables, other.variables
            )));
        }
        Ok(())
    }

    /// `[Q1, Q2]^i = Q1(Q2^i) − Q2(Q1^i)`.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| &self.apply(b) - &other.apply(a))
            .collect();
        Ok(Self::new(self.variables.clone(), components))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect();
        Self::new(self.variables.clone(), components)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(
            self.variables.clone(),
            self.components.iter().map(|p| p.scale(s)).collect(),
        )
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .variables
            .iter()
            .zip(&self.components)
            .filter(|(_, p)| !p.is_zero())
            .map(|(v, p)| format!("{v}: {}", p.format(&self.variables)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Generators of the equivalence family.
#[derive(Clone, Debug)]
pub enum FamilyGenerator {
    /// `u∂u + u_x∂u_x + g∂g`
    Du,
    /// `t∂t − 2f∂f − 2g∂g`
    Dt,
    /// `∂t`
    Pt,
    /// `φ∂x − φ_x u_x∂u_x + 2φ_x f∂f + φ_xx u_x f∂g`
    D(Poly),
    /// `ψ∂u + ψ_x∂u_x − ψ_xx f∂g`
    G(Poly),
    /// `t∂u`
    F1,
    /// `t²∂u + 2∂g`
    F2,
}

/// Parses a parameter function of `x` in the family ring.
pub fn family_parameter(text: &str) -> Result<Poly> {
    Poly::parse(text, &family_variables())
}

/// Realizes a generator over `(t, x, u, u_x, f, g)`.
pub fn realize_family(generator: &FamilyGenerator) -> Result<PolyVectorField> {
    let n = FAMILY_VARIABLES.len();
    let var = |i| Poly::var(n, i);
    let c = |k: i64| Poly::constant(n, Rational::from_integer(k.into()));
    let mut comps = vec![Poly::zero(n); n];
    let check_param = |p: &Poly| -> Result<()> {
        if p.nvars() != n || p.vars_used().iter().any(|&v| v != X) {
            return Err(Error::Format(
                "family parameter functions may only depend on x".into(),
            ));
        }
        Ok(())
    };
    match generator {
        FamilyGenerator::Du => {
            comps[U] = var(U);
            comps[UX] = var(UX);
            comps[G] = var(G);
        }
        FamilyGenerator::Dt => {
            comps[T] = var(T);
            comps[F] = &c(-2) * &var(F);
            comps[G] = &c(-2) * &var(G);
        }
        FamilyGenerator::Pt => comps[T] = c(1),
        FamilyGenerator::D(phi) => {
            check_param(phi)?;
            let phi_x = phi.derivative(X);
            let phi_xx = phi_x.derivative(X);
            comps[X] = phi.clone();
            comps[UX] = -&(&phi_x * &var(UX));
            comps[F] = &(&c(2) * &phi_x) * &var(F);
            comps[G] = &(&phi_xx * &var(UX)) * &var(F);
        }
        FamilyGenerator::G(psi) => {
            check_param(psi)?;
            let psi_x = psi.derivative(X);
            let psi_xx = psi_x.derivative(X);
            comps[U] = psi.clone();
            comps[UX] = psi_x;
            comps[G] = -&(&psi_xx * &var(F));
        }
        FamilyGenerator::F1 => comps[U] = var(T),
        FamilyGenerator::F2 => {
            comps[U] = var(T).pow(2);
            comps[G] = c(2);
        }
    }
    Ok(PolyVectorField::new(family_variables(), comps))
}

/// Structure constants of the span of linearly independent fields, in the
/// given order. Fails if a bracket leaves the span.
pub fn extract_structure(name: &str, fields: &[(String, PolyVectorField)]) -> Result<LieAlgebra> {
    let n = fields.len();
    if let Some((_, first)) = fields.first() {
        for (_, q) in fields {
            first.check_same_space(q)?;
        }
    }
    let names: Vec<String> = fields.iter().map(|(name, _)| name.clone()).collect();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            brackets.push(((i, j), fields[i].1.lie_bracket(&fields[j].1)?));
        }
    }
    // Joint coordinates: (component, monomial), sorted.
    let mut keys: Vec<(usize, Monomial)> = fields
        .iter()
        .map(|(_, q)| q)
        .chain(brackets.iter().map(|(_, b)| b))
        .flat_map(|q| {
            q.components()
                .iter()
                .enumerate()
                .flat_map(|(c, p)| p.terms().map(move |(m, _)| (c, m.clone())))
        })
        .collect();
    keys.sort();
    keys.dedup();
    let flatten = |q: &PolyVectorField| -> Vec<Rational> {
        keys.iter()
            .map(|(c, m)| q.components()[*c].coefficient(m))
            .collect()
    };
    let columns: Vec<Vec<Rational>> = fields.iter().map(|(_, q)| flatten(q)).collect();
    let span = Matrix::from_columns(keys.len(), &columns);
    let relations = span.kernel();
    if let Some(rel) = relations.basis().row_vectors().next() {
        return Err(Error::LinearlyDependent {
            relation: format_vector(rel, &names),
        });
    }
    let mut c = vec![Rational::zero(); n * n * n];
    for ((i, j), b) in &brackets {
        let coords = span.solve(&flatten(b)).ok_or_else(|| Error::NotClosed {
            left: names[*i].clone(),
            right: names[*j].clone(),
            bracket: b.to_string(),
        })?;
        for (k, x) in coords.into_iter().enumerate() {
            c[(j * n + i) * n + k] = -x.clone();
            c[(i * n + j) * n + k] = x;
        }
    }
    let g = LieAlgebra::from_tensor(name, names, c);
    if !g.validate().is_valid() {
        return Err(Error::InvalidAlgebra(
            "extracted structure constants violate the Jacobi identity".into(),
        ));
    }
    Ok(g)
}

/// Invertible polynomial point map with an explicit polynomial inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    variables: Vec<String>,
    forward: Vec<Poly>,
    inverse: Vec<Poly>,
}

impl PointMap {
    /// Checks `forward ∘ inverse = id` and `inverse ∘ forward = id` exactly.
    pub fn new(variables: Vec<String>, forward: Vec<Poly>, inverse: Vec<Poly>) -> Result<Self> {
        let n = variables.len();
        if forward.len() != n || inverse.len() != n {
            return Err(Error::Format("point map needs one polynomial per variable".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            let id = Poly::var(n, i);
            if forward[i].compose(&inverse) != id {
                return Err(Error::NotInvertible(format!(
                    "forward ∘ inverse differs from the identity in {v}"
                )));
            }
            if inverse[i].compose(&forward) != id {
                return Err(Error::NotInvertible(format!(
                    "inverse ∘ forward differs from the identity in {v}"
                )));
            }
        }
        Ok(Self {
            variables,
            forward,
            inverse,
        })
    }

    pub fn identity(variables: Vec<String>) -> Self {
        let n = variables.len();
        let id: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        Self {
            variables,
            forward: id.clone(),
            inverse: id,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn forward(&self) -> &[Poly] {
        &self.forward
    }

    pub fn inverse(&self) -> &[Poly] {
        &self.inverse
    }

    /// The map "first `self`, then `next`".
    pub fn then(&self, next: &PointMap) -> Result<PointMap> {
        if self.variables != next.variables {
            return Err(Error::Format("point maps over different variables".into()));
        }
        let forward = next.forward.iter().map(|p| p.compose(&self.forward)).collect();
        let inverse = self.inverse.iter().map(|p| p.compose(&next.inverse)).collect();
        Ok(PointMap {
            variables: self.variables.clone(),
            forward,
            inverse,
        })
    }

    /// `(T_*Q)^i = (Σ_j Q^j ∂_j T^i) ∘ T⁻¹`.
    pub fn pushforward(&self, q: &PolyVectorField) -> Result<PolyVectorField> {
        if q.variables() != self.variables.as_slice() {
            return Err(Error::Format(
                "vector field and point map use different variables".into(),
            ));
        }
        let components = self
            .forward
            .iter()
            .map(|fi| q.apply(fi).compose(&self.inverse))
            .collect();
        Ok(PolyVectorField::new(self.variables.clone(), components))
    }
}

#[derive(Clone, Debug, Default)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    /// Pairs `(Q, Q′)` with `[T_*Q, T_*Q′] ≠ T_*[Q, Q′]`.
    pub failures: Vec<(String, String)>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `[T_*Q, T_*Q′] = T_*[Q, Q′]` for all unordered pairs.
pub fn verify_homomorphism(
    map: &PointMap,
    fields: &[(String, PolyVectorField)],
) -> Result<HomomorphismReport> {
    let pushed = fields
        .iter()
        .map(|(_, q)| map.pushforward(q))
        .collect::<Result<Vec<_>>>()?;
    let mut report = HomomorphismReport::default();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            report.pairs_checked += 1;
            let lhs = pushed[i].lie_bracket(&pushed[j])?;
            let rhs = map.pushforward(&fields[i].1.lie_bracket(&fields[j].1)?)?;
            if lhs != rhs {
                report.failures.push((fields[i].0.clone(), fields[j].0.clone()));
            }
        }
    }
    Ok(report)
}

/// Realizes one of the named family generators: `Du`, `Dt`, `Pt`, `F1`, `F2`,
/// or `D(<poly in x>)`, `G(<poly in x>)`.
pub fn realize_named(spec: &str) -> Result<PolyVectorField> {
    let spec = spec.trim();
    let generator = match spec {
        "Du" => FamilyGenerator::Du,
        "Dt" => FamilyGenerator::Dt,
        "Pt" => FamilyGenerator::Pt,
        "F1" => FamilyGenerator::F1,
        "F2" => FamilyGenerator::F2,
        _ => {
            let inner = |prefix: &str| {
                spec.strip_prefix(prefix)
                    .and_then(|s| s.strip_suffix(')'))
            };
            if let Some(arg) = inner("D(") {
                FamilyGenerator::D(family_parameter(arg)?)
            } else if let Some(arg) = inner("G(") {
                FamilyGenerator::G(family_parameter(arg)?)
            } else {
                return Err(Error::Format(format!("unknown family generator {spec:?}")));
            }
        }
    };
    realize_family(&generator)
}
