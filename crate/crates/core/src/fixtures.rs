//! Reference data shipped with the crate: good-quiver tables, mutation lists,
//! braid relations and the annulus pair.

use serde::Deserialize;

use crate::algebra::{rational, to_i64, Basis, PolyMatrix, Ring, TruncatedPoly};
use crate::braid::Move;
use crate::error::{Error, Result};
use crate::quiver::Quiver;

const TABLES: &str = include_str!("../data/tables.json");
const MUTATIONS: &str = include_str!("../data/mutations.json");
const RELATIONS: &str = include_str!("../data/relations.json");
const ANNULUS: &str = include_str!("../data/annulus.json");
const CHAMBERS: &str = include_str!("../data/chambers.json");

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(Error::from)
}

/// An arrow `[from, to, count]` with 1-based vertices; `count` may involve
/// the table parameters.
pub type ArrowSpec = (usize, usize, String);

fn poly_rows(rows: &[Vec<String>]) -> Result<PolyMatrix> {
    PolyMatrix::parse_rows(rows, rows.len())
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableFixture {
    pub name: String,
    pub anchor: String,
    pub basis: Vec<Vec<i64>>,
    pub lambda: i64,
    pub p: u32,
    pub parameters: Vec<String>,
    /// For each parameter, the pair `(i, j)` with the parameter equal to
    /// `⟨α_i, α_j⟩`, 1-based.
    #[serde(default)]
    pub parameter_pairs: Vec<(usize, usize)>,
    /// Whether the entries list every good quiver, rather than one of each
    /// pair related by reversing all arrows.
    pub complete: bool,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableEntry {
    pub arrows: Vec<ArrowSpec>,
    pub stokes: Vec<Vec<String>>,
}

impl TableFixture {
    pub fn basis(&self) -> Result<Basis> {
        Basis::from_rows(self.basis.clone())
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }
}

impl TableEntry {
    /// `net[u][v]` = arrows `u → v` minus arrows `v → u`, as polynomials in
    /// the given parameter names (0-based vertices).
    pub fn net_arrows(&self, n: usize, names: &[String]) -> Result<Vec<Vec<TruncatedPoly>>> {
        let m = names.len();
        let mut net = vec![vec![TruncatedPoly::zero(m); n]; n];
        for (u, v, count) in &self.arrows {
            if *u == 0 || *v == 0 || *u > n || *v > n || u == v {
                return Err(Error::InvalidQuiver(format!("bad arrow {u} -> {v}")));
            }
            let c = TruncatedPoly::parse_with(count, m, |s| names.iter().position(|x| x == s))?;
            let (a, b) = (u - 1, v - 1);
            net[a][b] = net[a][b].add_ref(&c);
            net[b][a] = net[b][a].sub_ref(&c);
        }
        Ok(net)
    }

    /// The quiver at integer parameter values; negative counts reverse the
    /// arrow.
    pub fn quiver_at(&self, n: usize, names: &[String], values: &[i64]) -> Result<Quiver> {
        let point: Vec<_> = values.iter().map(|&v| rational(v)).collect();
        let net = self.net_arrows(n, names)?;
        let mut arrows = vec![vec![0u32; n]; n];
        for u in 0..n {
            for v in 0..n {
                let x = net[u][v].evaluate(&point)?;
                let x = to_i64(&x).ok_or_else(|| Error::InvalidQuiver(format!("non-integer count {x}")))?;
                if x > 0 {
                    arrows[u][v] = x as u32;
                }
            }
        }
        Quiver::new(arrows)
    }

    pub fn stokes(&self) -> Result<PolyMatrix> {
        poly_rows(&self.stokes)
    }
}

#[derive(Clone, Debug, Deserialize)]
struct TablesFile {
    tables: Vec<TableFixture>,
}

pub fn tables() -> Result<Vec<TableFixture>> {
    Ok(parse::<TablesFile>(TABLES)?.tables)
}

/// A quiver `μ_{w_k} ⋯ μ_{w_1} A_n` with its printed Stokes matrix.
#[derive(Clone, Debug, Deserialize)]
pub struct MutationFixture {
    pub key: String,
    pub anchor: String,
    pub n: usize,
    /// Vertices mutated in order of application, 1-based.
    pub word: Vec<usize>,
    pub arrows: Vec<(usize, usize, u32)>,
    pub stokes: Vec<Vec<String>>,
}

impl MutationFixture {
    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::from_arrows(self.n, &self.arrows)
    }

    pub fn stokes(&self) -> Result<PolyMatrix> {
        poly_rows(&self.stokes)
    }
}

#[derive(Clone, Debug, Deserialize)]
struct MutationsFile {
    mutations: Vec<MutationFixture>,
}

pub fn mutations() -> Result<Vec<MutationFixture>> {
    Ok(parse::<MutationsFile>(MUTATIONS)?.mutations)
}

/// `lhs = moves(rhs)`, both sides named by source keys such as `A4/1,2`
/// (the quiver `A_4` mutated at 1 then 2) or `annulus/S`.
#[derive(Clone, Debug, Deserialize)]
pub struct RelationFixture {
    pub anchor: String,
    pub lhs: String,
    pub rhs: String,
    pub moves: Vec<serde_json::Value>,
    /// Printed in this form, as opposed to a reformulation added alongside.
    pub displayed: bool,
}

impl RelationFixture {
    pub fn moves(&self) -> Result<Vec<Move>> {
        self.moves.iter().map(Move::from_json).collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
struct RelationsFile {
    relations: Vec<RelationFixture>,
}

pub fn relations() -> Result<Vec<RelationFixture>> {
    Ok(parse::<RelationsFile>(RELATIONS)?.relations)
}

#[derive(Clone, Debug, Deserialize)]
pub struct AnnulusSide {
    pub key: String,
    pub arrows: Vec<(usize, usize, u32)>,
    pub basis: Vec<Vec<i64>>,
    pub stokes: Vec<Vec<String>>,
}

impl AnnulusSide {
    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::from_arrows(self.basis.len(), &self.arrows)
    }

    pub fn basis(&self) -> Result<Basis> {
        Basis::from_rows(self.basis.clone())
    }

    pub fn stokes(&self) -> Result<PolyMatrix> {
        poly_rows(&self.stokes)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct AnnulusFixture {
    pub anchor: String,
    pub sides: Vec<AnnulusSide>,
}

pub fn annulus() -> Result<AnnulusFixture> {
    parse(ANNULUS)
}

/// Two chambers for linear `A_4`, given by the order of the simple phases
/// (largest first, 1-based), and the expected natural lifts.
#[derive(Clone, Debug, Deserialize)]
pub struct ChamberFixture {
    pub anchor: String,
    pub n: usize,
    pub orders: Vec<Vec<usize>>,
    pub low_order: u32,
    pub low_lifts: Vec<Vec<Vec<String>>>,
    pub high_order: u32,
    pub high_lift: Vec<Vec<String>>,
}

impl ChamberFixture {
    pub fn low_lifts(&self) -> Result<Vec<PolyMatrix>> {
        self.low_lifts.iter().map(|r| poly_rows(r)).collect()
    }

    pub fn high_lift(&self) -> Result<PolyMatrix> {
        poly_rows(&self.high_lift)
    }
}

pub fn a4_chambers() -> Result<ChamberFixture> {
    parse(CHAMBERS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_parses() {
        for t in tables().unwrap() {
            t.basis().unwrap();
            for e in &t.entries {
                let zeros = vec![0; t.parameters.len()];
                e.quiver_at(t.n(), &t.parameters, &zeros).unwrap();
                assert_eq!(e.stokes().unwrap().dim(), t.n());
            }
        }
        for m in mutations().unwrap() {
            m.quiver().unwrap();
            m.stokes().unwrap();
        }
        for r in relations().unwrap() {
            r.moves().unwrap();
        }
        for s in annulus().unwrap().sides {
            s.quiver().unwrap();
            s.basis().unwrap();
            s.stokes().unwrap();
        }
        let c = a4_chambers().unwrap();
        assert_eq!(c.low_lifts().unwrap().len(), 2);
        c.high_lift().unwrap();
    }

    #[test]
    fn mutation_words_reach_the_listed_quivers() {
        for m in mutations().unwrap() {
            assert_eq!(Quiver::linear_a(m.n).mutate_word(&m.word).unwrap(), m.quiver().unwrap(), "{}", m.key);
        }
    }
}
