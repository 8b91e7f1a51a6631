//! Stokes factors, their clockwise ordered product, lifts, and factorization.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::chamber::Chamber;
use super::dt::DtModel;
use crate::algebra::{
    first_topological_order, format_rational, permutations, rational, Basis, LatticeVector, Matrix, PolyMatrix,
    Rational, Ring, TruncatedPoly,
};
use crate::error::{Error, Result};
use crate::quiver::{EulerForm, Quiver};

/// One elementary factor `I + c·E_ij` (0-based indices) attached to the ray
/// of `α_i − α_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub i: usize,
    pub j: usize,
    pub class: LatticeVector,
    pub dt: Rational,
    pub coefficient: TruncatedPoly,
}

/// Ordered factors and their product.
#[derive(Clone, Debug, PartialEq)]
pub struct StokesData {
    pub basis: Basis,
    /// 0-based indices in an order making the product upper triangular.
    pub order: Vec<usize>,
    pub factors: Vec<Factor>,
    pub product: PolyMatrix,
    pub unipotent: bool,
    pub truncation: Option<u32>,
}

impl StokesData {
    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| {
                json!({
                    "i": f.i + 1,
                    "j": f.j + 1,
                    "class": f.class.coords(),
                    "dt": format_rational(&f.dt),
                    "coefficient": f.coefficient.to_string(),
                })
            })
            .collect();
        json!({
            "basis": self.basis.to_json(),
            "p": self.truncation,
            "order": self.order.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "factors": factors,
            "product": self.product.to_json(),
            "unipotent": self.unipotent,
        })
    }
}

/// `−(−1)^g g · dt · s^{|α_i − α_j|}` with `g = ⟨α_i, α_j⟩`.
pub fn factor_coefficient(i: usize, j: usize, basis: &Basis, e: &EulerForm, dt: &Rational) -> TruncatedPoly {
    let g = e.pair(basis.row(i), basis.row(j));
    let sign = if g % 2 == 0 { -1 } else { 1 };
    let c = rational(sign * g) * dt;
    basis.difference(i, j).monomial().scale(&c)
}

/// The elementary factor `I − (−1)^g g · dt · s^{α_i − α_j} E_ij`.
pub fn stokes_factor(i: usize, j: usize, basis: &Basis, e: &EulerForm, dt: &Rational) -> PolyMatrix {
    PolyMatrix::elementary(basis.rank(), i, j, factor_coefficient(i, j, basis, e, dt))
}

/// Factors for the differences `α_i − α_j` with charge in the upper half
/// plane, nonzero DT, and (when `p` is given) length below `p`, ordered by
/// decreasing argument.
pub fn stokes_factors(
    basis: &Basis,
    e: &EulerForm,
    model: &DtModel,
    chamber: &Chamber,
    p: Option<u32>,
) -> Result<Vec<Factor>> {
    let n = basis.rank();
    if chamber.rank() != n || e.rank() != n {
        return Err(Error::Dimension { left: n, right: chamber.rank().min(e.rank()) });
    }
    let mut factors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let class = basis.difference(i, j);
            if p.is_some_and(|p| class.len() >= u64::from(p)) {
                continue;
            }
            let z = chamber.charge(&class);
            if z.is_zero() {
                return Err(Error::ZeroCharge(class.to_string()));
            }
            if !z.in_upper_half_plane() {
                continue;
            }
            let dt = chamber.dt_value(model, &class)?;
            if dt.is_zero() {
                continue;
            }
            let coefficient = factor_coefficient(i, j, basis, e, &dt);
            factors.push(Factor { i, j, class, dt, coefficient });
        }
    }
    let classes: Vec<LatticeVector> = factors.iter().map(|f| f.class.clone()).collect();
    let order = chamber.ray_order(&classes)?;
    factors.sort_by_key(|f| order.iter().position(|c| *c == f.class).unwrap());
    Ok(factors)
}

/// Left-to-right product of the factors, truncated when `bound` is given.
pub fn multiply_factors(n: usize, factors: &[Factor], bound: Option<u32>) -> Result<PolyMatrix> {
    let nvars = factors.first().map_or(n, |f| f.coefficient.nvars());
    let mut m = PolyMatrix::identity(n, nvars, bound);
    for f in factors {
        let c = match bound {
            Some(p) => f.coefficient.truncate(p),
            None => f.coefficient.clone(),
        };
        m = m.mul(&PolyMatrix::elementary(n, f.i, f.j, c))?;
    }
    Ok(m)
}

fn unipotent_order(n: usize, factors: &[Factor]) -> Option<Vec<usize>> {
    let edges: Vec<(usize, usize)> = factors.iter().map(|f| (f.i, f.j)).collect();
    first_topological_order(n, &edges)
}

/// The clockwise ordered product over a chamber: exact when `p` is absent,
/// otherwise over classes of length below `p` and reduced modulo `(s)^p`.
pub fn stokes_product(
    basis: &Basis,
    e: &EulerForm,
    model: &DtModel,
    chamber: &Chamber,
    p: Option<u32>,
) -> Result<StokesData> {
    let n = basis.rank();
    let factors = stokes_factors(basis, e, model, chamber, p)?;
    let product = multiply_factors(n, &factors, p)?;
    let (order, unipotent) = match unipotent_order(n, &factors) {
        Some(order) => {
            let ok = product.is_unipotent_wrt(&order);
            (order, ok)
        }
        None => ((0..n).collect(), false),
    };
    Ok(StokesData { basis: basis.clone(), order, factors, product, unipotent, truncation: p })
}

/// The distinct exact products of the factors of length below `p`, over a
/// set of chambers.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalLifts {
    pub values: Vec<PolyMatrix>,
    /// All values agree modulo `(s)^p`.
    pub congruent: bool,
}

pub fn natural_lifts(
    basis: &Basis,
    e: &EulerForm,
    model: &DtModel,
    chambers: &[Chamber],
    p: u32,
) -> Result<NaturalLifts> {
    let n = basis.rank();
    let mut values: Vec<PolyMatrix> = Vec::new();
    for ch in chambers {
        let factors = stokes_factors(basis, e, model, ch, Some(p))?;
        let m = multiply_factors(n, &factors, None)?;
        if !values.contains(&m) {
            values.push(m);
        }
    }
    let congruent = values.windows(2).all(|w| w[0].truncate(p) == w[1].truncate(p));
    Ok(NaturalLifts { values, congruent })
}

/// `I − Σ s_i E_{i,i+1}`.
pub fn an_stokes(n: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n, n, None);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, TruncatedPoly::var(n, i).neg_ref());
    }
    m
}

/// Coefficients `c` with `Π (I + c_k E_{positions[k]}) = t`, positions
/// 0-based. The positions must form an acyclic pattern; each coefficient is
/// solved from the entry it controls, in order of increasing span, and the
/// result is checked by multiplying back.
pub fn factor_product(t: &PolyMatrix, positions: &[(usize, usize)]) -> Result<Vec<TruncatedPoly>> {
    let n = t.dim();
    let fail = |m: &str| Error::Factorization(m.to_string());
    if positions.iter().any(|&(a, b)| a == b || a >= n || b >= n) {
        return Err(fail("position out of range or on the diagonal"));
    }
    for (k, p) in positions.iter().enumerate() {
        if positions[..k].contains(p) {
            return Err(fail("repeated position"));
        }
    }
    let order = first_topological_order(n, positions).ok_or_else(|| fail("positions contain a cycle"))?;
    let mut pos = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let zero = t.get(0, 0).zero_like();
    let mut coeffs = vec![zero; positions.len()];
    let mut by_span: Vec<usize> = (0..positions.len()).collect();
    by_span.sort_by_key(|&k| (pos[positions[k].1] - pos[positions[k].0], k));
    let product = |coeffs: &[TruncatedPoly]| -> Result<PolyMatrix> {
        let mut m = Matrix::identity_like(n, t.get(0, 0));
        for (&(a, b), c) in positions.iter().zip(coeffs) {
            m = m.mul(&Matrix::elementary(n, a, b, c.clone()))?;
        }
        Ok(m)
    };
    for &k in &by_span {
        let (a, b) = positions[k];
        let current = product(&coeffs)?;
        coeffs[k] = t.get(a, b).sub_ref(current.get(a, b));
    }
    if product(&coeffs)? != *t {
        return Err(fail("the product of the solved factors differs from the target"));
    }
    Ok(coeffs)
}

/// One chamber per ordering of the simple charges, with DT invariants from
/// thin stability for every difference of basis vectors. Chambers with the
/// same active classes and values are merged.
pub fn phase_chambers(quiver: &Quiver, basis: &Basis, seed: u64) -> Result<Vec<Chamber>> {
    bounded_phase_chambers(quiver, basis, None, seed)
}

/// As [`phase_chambers`], keeping only differences of length below `p`.
pub fn bounded_phase_chambers(quiver: &Quiver, basis: &Basis, p: Option<u32>, seed: u64) -> Result<Vec<Chamber>> {
    let n = basis.rank();
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = basis.difference(i, j);
            if p.is_none_or(|p| c.len() < u64::from(p)) {
                candidates.push(c);
            }
        }
    }
    let mut out: Vec<Chamber> = Vec::new();
    for order in permutations(n) {
        let chamber = generic_chamber(quiver, &order, &candidates, seed)?;
        if !out.iter().any(|c| c.active() == chamber.active() && c.dt_table() == chamber.dt_table()) {
            out.push(chamber);
        }
    }
    Ok(out)
}

/// Stokes data over every phase chamber, with thin-stability DT invariants.
pub fn pipeline(quiver: &Quiver, basis: &Basis, p: Option<u32>) -> Result<Vec<(Chamber, StokesData)>> {
    let e = quiver.euler_form();
    bounded_phase_chambers(quiver, basis, p, 0)?
        .into_iter()
        .map(|ch| {
            let data = stokes_product(basis, &e, &DtModel::SimplesOnly, &ch, p)?;
            Ok((ch, data))
        })
        .collect()
}

/// A chamber with simples ordered by `order` (largest argument first),
/// re-perturbed until no two candidate classes share a ray.
pub fn generic_chamber(quiver: &Quiver, order: &[usize], candidates: &[LatticeVector], seed: u64) -> Result<Chamber> {
    let mut last = None;
    for attempt in 0..32 {
        let z = Chamber::generic_charges(order, seed.wrapping_add(attempt));
        let probe = Chamber::new(z.clone(), Vec::new(), Default::default())?;
        let clear = candidates.iter().all(|c| !probe.charge(c).is_zero()) && probe.ray_order(candidates).is_ok();
        if clear {
            return Chamber::from_stability(quiver, z, candidates);
        }
        last = Some(probe.ray_order(candidates).err());
    }
    Err(last.flatten().unwrap_or_else(|| Error::ZeroCharge("generic perturbation".into())))
}

/// Outcome of the order-`n+1` jet check for `A_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnJetReport {
    pub n: usize,
    pub chambers: usize,
    pub distinct_products: usize,
    /// Thin-stability DT values agree with the interval model.
    pub model_consistent: bool,
    /// Indices of two chambers with different products, if any.
    pub offending: Option<(usize, usize)>,
    pub matches_an_stokes: bool,
}

impl AnJetReport {
    pub fn pass(&self) -> bool {
        self.model_consistent && self.offending.is_none() && self.matches_an_stokes
    }
}

/// Checks that for linear `A_n` with the triangular basis and interval DT
/// invariants, the exact products over every chamber coincide with
/// `an_stokes(n)`.
pub fn verify_an_jet(n: usize) -> Result<AnJetReport> {
    let quiver = Quiver::linear_a(n);
    let basis = Basis::triangular(n);
    let e = quiver.euler_form();
    let model = DtModel::AnIntervals;
    let chambers = phase_chambers(&quiver, &basis, 0)?;
    let model_consistent = chambers
        .iter()
        .all(|c| c.dt_table().iter().all(|(k, v)| model.value(k).as_ref() == Some(v)));
    let p = n as u32 + 1;
    let mut products: Vec<PolyMatrix> = Vec::new();
    for c in &chambers {
        let data = stokes_product(&basis, &e, &model, &c.without_dt_table(), Some(p))?;
        let factors = data.factors;
        products.push(multiply_factors(n, &factors, None)?);
    }
    let offending = (1..products.len()).find(|&k| products[k] != products[0]).map(|k| (0, k));
    let mut distinct: Vec<&PolyMatrix> = Vec::new();
    for m in &products {
        if !distinct.contains(&m) {
            distinct.push(m);
        }
    }
    let target = an_stokes(n);
    Ok(AnJetReport {
        n,
        chambers: chambers.len(),
        distinct_products: distinct.len(),
        model_consistent,
        offending,
        matches_an_stokes: products.iter().all(|m| *m == target),
    })
}

/// `s_J`, the point with every coordinate one.
pub fn joyce_point(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}
