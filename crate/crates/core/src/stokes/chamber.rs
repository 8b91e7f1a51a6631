//! Central charges, exact ray ordering, and chambers with their active classes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::dt::DtModel;
use crate::algebra::{format_rational, parse_rational, ratio, rational, LatticeVector, Rational};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// A Gaussian rational `x + y·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    pub x: Rational,
    pub y: Rational,
}

impl Charge {
    pub fn new(x: Rational, y: Rational) -> Self {
        Charge { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// In `{y > 0} ∪ {y = 0, x < 0}`.
    pub fn in_upper_half_plane(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_negative())
    }

    /// `x₁y₂ − x₂y₁`.
    pub fn cross(&self, other: &Charge) -> Rational {
        &self.x * &other.y - &other.x * &self.y
    }

    /// Compares arguments of two nonzero charges in the closed upper half
    /// plane; `Greater` means a larger argument.
    pub fn cmp_arg(&self, other: &Charge) -> Ordering {
        let c = self.cross(other);
        if c.is_negative() {
            Ordering::Greater
        } else if c.is_positive() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// A stability chamber: charges of the simples, the classes with nonzero DT
/// invariant (oriented into the upper half plane), and optional DT values
/// overriding a model.
#[derive(Clone, Debug, PartialEq)]
pub struct Chamber {
    z: Vec<Charge>,
    active: Vec<LatticeVector>,
    dt: BTreeMap<LatticeVector, Rational>,
}

impl Chamber {
    pub fn new(z: Vec<Charge>, active: Vec<LatticeVector>, dt: BTreeMap<LatticeVector, Rational>) -> Result<Self> {
        for (i, c) in z.iter().enumerate() {
            if !c.in_upper_half_plane() {
                return Err(Error::ChargeOutsideHalfPlane(i + 1));
            }
        }
        let mut ch = Chamber { z, active: Vec::new(), dt: BTreeMap::new() };
        let mut oriented = Vec::new();
        for c in active {
            ch.check_rank(&c)?;
            oriented.push(ch.orient(&c)?);
        }
        oriented.sort();
        oriented.dedup();
        let mut table = BTreeMap::new();
        for (c, v) in dt {
            ch.check_rank(&c)?;
            table.insert(ch.orient(&c)?, v);
        }
        ch.active = oriented;
        ch.dt = table;
        Ok(ch)
    }

    /// Charges `(x_v, 1)` whose arguments decrease along `order` (0-based
    /// vertices, largest argument first), with a seeded perturbation of the
    /// real parts.
    pub fn generic_charges(order: &[usize], seed: u64) -> Vec<Charge> {
        let n = order.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut z = vec![Charge::new(Rational::zero(), Rational::one()); n];
        for (pos, &v) in order.iter().enumerate() {
            let jitter = ratio(rng.gen_range(1..1000), 1000);
            z[v] = Charge::new(rational(2 * pos as i64) + jitter, Rational::one());
        }
        z
    }

    /// The chamber in which the DT invariants of `candidates` are computed
    /// from the quiver by counting stable thin representations (see
    /// [`thin_dt`]). Candidates in the lower half plane are negated; those
    /// that are not effective up to sign have invariant zero.
    pub fn from_stability(quiver: &Quiver, z: Vec<Charge>, candidates: &[LatticeVector]) -> Result<Self> {
        let empty = Chamber::new(z, Vec::new(), BTreeMap::new())?;
        let mut dt = BTreeMap::new();
        for c in candidates {
            empty.check_rank(c)?;
            let c = empty.orient(c)?;
            if !c.is_effective() {
                continue;
            }
            let v = thin_dt(quiver, &empty.z, &c)?;
            if !v.is_zero() {
                dt.insert(c, v);
            }
        }
        let active = dt.keys().cloned().collect();
        Chamber::new(empty.z, active, dt)
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    pub fn charges(&self) -> &[Charge] {
        &self.z
    }

    pub fn active(&self) -> &[LatticeVector] {
        &self.active
    }

    pub fn dt_table(&self) -> &BTreeMap<LatticeVector, Rational> {
        &self.dt
    }

    /// The same chamber with the DT table dropped, so that values come from
    /// the model.
    pub fn without_dt_table(&self) -> Self {
        Chamber { dt: BTreeMap::new(), ..self.clone() }
    }

    fn check_rank(&self, c: &LatticeVector) -> Result<()> {
        if c.rank() != self.rank() {
            return Err(Error::Dimension { left: self.rank(), right: c.rank() });
        }
        Ok(())
    }

    pub fn charge(&self, c: &LatticeVector) -> Charge {
        let mut x = Rational::zero();
        let mut y = Rational::zero();
        for (a, z) in c.coords().iter().zip(&self.z) {
            if *a != 0 {
                let a = rational(*a);
                x += &a * &z.x;
                y += &a * &z.y;
            }
        }
        Charge::new(x, y)
    }

    /// The class or its negation, whichever has charge in the upper half plane.
    pub fn orient(&self, c: &LatticeVector) -> Result<LatticeVector> {
        let z = self.charge(c);
        if z.is_zero() {
            return Err(Error::ZeroCharge(c.to_string()));
        }
        Ok(if z.in_upper_half_plane() { c.clone() } else { -c })
    }

    pub fn is_active(&self, c: &LatticeVector) -> Result<bool> {
        let c = self.orient(c)?;
        Ok(self.active.binary_search(&c).is_ok())
    }

    /// `DT(c)` in this chamber: zero unless active, then the table value or
    /// the model value.
    pub fn dt_value(&self, model: &DtModel, c: &LatticeVector) -> Result<Rational> {
        let c = self.orient(c)?;
        if self.active.binary_search(&c).is_err() {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.dt.get(&c) {
            return Ok(v.clone());
        }
        model.value(&c).ok_or_else(|| Error::NoFactorRule(c.to_string()))
    }

    /// Orients each class into the upper half plane and sorts by strictly
    /// decreasing argument.
    pub fn ray_order(&self, classes: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
        let mut items = Vec::with_capacity(classes.len());
        for c in classes {
            self.check_rank(c)?;
            let c = self.orient(c)?;
            let z = self.charge(&c);
            items.push((z, c));
        }
        items.sort_by(|a, b| b.0.cmp_arg(&a.0).then_with(|| a.1.cmp(&b.1)));
        for w in items.windows(2) {
            if w[0].0.cmp_arg(&w[1].0) == Ordering::Equal {
                return Err(Error::RayCollision(w[0].1.to_string(), w[1].1.to_string()));
            }
        }
        Ok(items.into_iter().map(|(_, c)| c).collect())
    }

    pub fn to_json(&self) -> Value {
        let z: Vec<Value> = self.z.iter().map(|c| json!([format_rational(&c.x), format_rational(&c.y)])).collect();
        let active: Vec<Value> = self.active.iter().map(|c| json!(c.coords())).collect();
        let mut dt = Map::new();
        for (c, v) in &self.dt {
            dt.insert(c.key(), Value::String(format_rational(v)));
        }
        json!({ "Z": z, "active": active, "dt": dt })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("chamber: {m}"));
        let z = v
            .get("Z")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"Z\""))?
            .iter()
            .map(|p| {
                let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("charge must be [x, y]"))?;
                Ok(Charge::new(json_rational(&pair[0])?, json_rational(&pair[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        let active = match v.get("active") {
            None => Vec::new(),
            Some(a) => serde_json::from_value::<Vec<LatticeVector>>(a.clone())?,
        };
        let mut dt = BTreeMap::new();
        if let Some(table) = v.get("dt") {
            let table = table.as_object().ok_or_else(|| bad("\"dt\" must be an object"))?;
            for (k, val) in table {
                dt.insert(LatticeVector::parse_key(k)?, json_rational(val)?);
            }
        }
        Chamber::new(z, active, dt)
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse("expected a rational".into())),
    }
}

/// DT invariant of an effective class with 0/1 coordinates, by counting
/// stable thin representations of the quiver with the relations of its
/// oriented 3-cycles.
///
/// A representation is determined by the set `N` of arrows inside the
/// support acting nonzero; `N` must connect the support and may not contain
/// two consecutive arrows of an oriented 3-cycle. Its subrepresentations are
/// the vertex sets closed under following `N`, and it is stable when every
/// proper one has smaller argument. A pair of vertices joined by `m` parallel
/// arrows contributes `(−1)^{m−1} m` when the extension is stable.
pub fn thin_dt(quiver: &Quiver, z: &[Charge], c: &LatticeVector) -> Result<Rational> {
    let unsupported = || Error::UnsupportedClass(c.to_string());
    if !c.is_effective() || c.coords().iter().any(|&a| a > 1) {
        return Err(unsupported());
    }
    let support = c.support();
    if support.len() == 1 {
        return Ok(Rational::one());
    }
    let sum = |vs: &[usize]| {
        let mut s = Charge::new(Rational::zero(), Rational::zero());
        for &v in vs {
            s.x += &z[v].x;
            s.y += &z[v].y;
        }
        s
    };
    let mut arrows = Vec::new();
    for &u in &support {
        for &v in &support {
            let m = quiver.count(u, v);
            if m > 1 {
                if support.len() != 2 {
                    return Err(unsupported());
                }
                let stable = z[v].cross(&z[u]).is_positive();
                let sign = if m % 2 == 1 { 1 } else { -1 };
                return Ok(if stable { rational(sign * i64::from(m)) } else { Rational::zero() });
            }
            if m == 1 {
                arrows.push((u, v));
            }
        }
    }
    let consecutive = |a: (usize, usize), b: (usize, usize)| a.1 == b.0 && quiver.count(b.1, a.0) > 0;
    let total = sum(&support);
    let k = support.len();
    let mut count = 0i64;
    for mask in 0u32..(1u32 << arrows.len()) {
        let chosen: Vec<(usize, usize)> =
            (0..arrows.len()).filter(|&t| mask >> t & 1 == 1).map(|t| arrows[t]).collect();
        if chosen.len() + 1 < k {
            continue;
        }
        if chosen.iter().any(|&a| chosen.iter().any(|&b| a != b && consecutive(a, b))) {
            continue;
        }
        if !spans(&support, &chosen) {
            continue;
        }
        let mut stable = true;
        for sub in 1u32..(1u32 << k) - 1 {
            let members: Vec<usize> = (0..k).filter(|&t| sub >> t & 1 == 1).map(|t| support[t]).collect();
            let closed = chosen.iter().all(|&(u, v)| !members.contains(&u) || members.contains(&v));
            if closed && !sum(&members).cross(&total).is_positive() {
                stable = false;
                break;
            }
        }
        if stable {
            count += 1;
        }
    }
    Ok(rational(count))
}

fn spans(support: &[usize], arrows: &[(usize, usize)]) -> bool {
    let mut seen = vec![support[0]];
    let mut grew = true;
    while grew {
        grew = false;
        for &(u, v) in arrows {
            if seen.contains(&u) != seen.contains(&v) {
                seen.push(if seen.contains(&u) { v } else { u });
                grew = true;
            }
        }
    }
    seen.len() == support.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn charge(x: i64, y: i64) -> Charge {
        Charge::new(rational(x), rational(y))
    }

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::new(v.to_vec())
    }

    #[test]
    fn ray_order_by_argument() {
        let ch = Chamber::new(vec![charge(-1, 1), charge(1, 1)], vec![], BTreeMap::new()).unwrap();
        let order = ch.ray_order(&[lv(&[0, 1]), lv(&[1, 1]), lv(&[1, 0])]).unwrap();
        assert_eq!(order, vec![lv(&[1, 0]), lv(&[1, 1]), lv(&[0, 1])]);
        assert_eq!(ch.ray_order(&[lv(&[0, -1])]).unwrap(), vec![lv(&[0, 1])]);
    }

    #[test]
    fn collisions_and_zero_charge() {
        let ch = Chamber::new(vec![charge(0, 1), charge(0, 1)], vec![], BTreeMap::new()).unwrap();
        assert!(matches!(ch.ray_order(&[lv(&[1, 0]), lv(&[0, 1])]), Err(Error::RayCollision(..))));
        assert!(matches!(ch.ray_order(&[lv(&[1, -1])]), Err(Error::ZeroCharge(_))));
    }

    #[test]
    fn boundary_ray_is_leftmost() {
        let ch = Chamber::new(vec![charge(-1, 0), charge(-5, 1)], vec![], BTreeMap::new()).unwrap();
        assert_eq!(ch.ray_order(&[lv(&[0, 1]), lv(&[1, 0])]).unwrap()[0], lv(&[1, 0]));
        assert!(Chamber::new(vec![charge(1, 0)], vec![], BTreeMap::new()).is_err());
    }

    #[test]
    fn extension_stability_on_a2() {
        let q = Quiver::linear_a(2);
        let both = lv(&[1, 1]);
        // S_1 to the left of S_2: the sub S_2 has smaller argument.
        assert_eq!(thin_dt(&q, &[charge(-1, 1), charge(1, 1)], &both).unwrap(), rational(1));
        assert_eq!(thin_dt(&q, &[charge(1, 1), charge(-1, 1)], &both).unwrap(), rational(0));
    }

    #[test]
    fn kronecker_value() {
        let q = Quiver::kronecker(3);
        let z = [charge(-1, 1), charge(1, 1)];
        assert_eq!(thin_dt(&q, &z, &lv(&[1, 1])).unwrap(), rational(3));
        let q = Quiver::kronecker(2);
        assert_eq!(thin_dt(&q, &z, &lv(&[1, 1])).unwrap(), rational(-2));
    }

    #[test]
    fn a3_intervals() {
        let q = Quiver::linear_a(3);
        let z = Chamber::generic_charges(&[0, 1, 2], 7);
        assert_eq!(thin_dt(&q, &z, &lv(&[1, 1, 1])).unwrap(), rational(1));
        assert_eq!(thin_dt(&q, &z, &lv(&[1, 0, 1])).unwrap(), rational(0));
        let z = Chamber::generic_charges(&[2, 1, 0], 7);
        assert_eq!(thin_dt(&q, &z, &lv(&[1, 1, 1])).unwrap(), rational(0));
    }

    #[test]
    fn cyclic_triangle_has_no_full_thin_object() {
        let q = Quiver::from_arrows(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]).unwrap();
        for order in [[0, 1, 2], [2, 1, 0], [1, 0, 2]] {
            let z = Chamber::generic_charges(&order, 1);
            assert_eq!(thin_dt(&q, &z, &lv(&[1, 1, 1])).unwrap(), rational(0));
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"Z":[["-1","1"],["1","1"]],"active":[[1,0],[0,1],[1,1]],"dt":{"1,1":"1"}}"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let ch = Chamber::from_json(&v).unwrap();
        let canonical = r#"{"Z":[["-1","1"],["1","1"]],"active":[[0,1],[1,0],[1,1]],"dt":{"1,1":"1"}}"#;
        assert_eq!(ch.to_json().to_string(), canonical);
        assert_eq!(Chamber::from_json(&ch.to_json()).unwrap(), ch);
        assert_eq!(ch.dt_value(&DtModel::SimplesOnly, &lv(&[-1, -1])).unwrap(), rational(1));
        assert_eq!(ch.dt_value(&DtModel::SimplesOnly, &lv(&[1, -1])).unwrap(), rational(0));
    }
}
