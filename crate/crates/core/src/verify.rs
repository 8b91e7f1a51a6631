//! Reproduction checks against the reference data in [`crate::fixtures`].
//!
//! Every check yields one [`CheckLine`]; failures are reported, never raised.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde_json::{json, Value};

use crate::algebra::{rational, Basis, PolyMatrix, RatMatrix, TruncatedPoly};
use crate::braid::{
    equivalent, sign_equivalent, verify_braid_group_relations, BraidWord, SearchLimits, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::fixtures::{self, TableFixture};
use crate::goodness::{check_good, find_good_quivers, mutation_basis, GoodQuiver};
use crate::quiver::Quiver;
use crate::stokes::{
    an_stokes, generic_chamber, natural_lifts, pipeline, verify_an_jet, DtModel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    Tables,
    AnJets,
    MutationTheorem,
    Annulus,
    BraidRelations,
    All,
}

impl Scope {
    pub fn parse(s: &str) -> Result<Scope> {
        Ok(match s {
            "tables" => Scope::Tables,
            "an_jets" | "an-jets" => Scope::AnJets,
            "mutation_theorem" | "mutation-theorem" => Scope::MutationTheorem,
            "annulus" => Scope::Annulus,
            "braid_relations" | "braid-relations" => Scope::BraidRelations,
            "all" => Scope::All,
            _ => return Err(Error::Parse(format!("unknown scope {s:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Scope::Tables => "tables",
            Scope::AnJets => "an_jets",
            Scope::MutationTheorem => "mutation_theorem",
            Scope::Annulus => "annulus",
            Scope::BraidRelations => "braid_relations",
            Scope::All => "all",
        }
    }
}

/// Kind of a check, used to group lines into reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    /// A good-quiver table: the set of solutions or one printed entry.
    Table,
    /// The `A_n` Stokes matrix from the pipeline.
    AnStokes,
    /// Natural lifts over two chambers of `A_4`.
    Chambers,
    /// A Stokes matrix in the mutation class of `A_n`.
    MutationMatrix,
    /// A relation between Stokes matrices in the form it is printed.
    Relation,
    /// A reformulation of a printed relation, reported alongside it.
    RelationVariant,
    /// An orbit-search certificate.
    Certificate,
    /// A Stokes matrix of the annulus quivers.
    AnnulusMatrix,
    /// Braid group relations on random samples.
    BraidRelation,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Table => "table",
            Group::AnStokes => "an-stokes",
            Group::Chambers => "chambers",
            Group::MutationMatrix => "mutation-matrix",
            Group::Relation => "relation",
            Group::RelationVariant => "relation-variant",
            Group::Certificate => "certificate",
            Group::AnnulusMatrix => "annulus-matrix",
            Group::BraidRelation => "braid-relation",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub scope: Scope,
    pub group: Group,
    /// Identifies the checked object, e.g. `A4/1,2` or `tau3#2`.
    pub key: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn to_json(&self) -> Value {
        json!({
            "scope": self.scope.name(),
            "group": self.group.name(),
            "key": self.key,
            "anchor": self.anchor,
            "pass": self.pass,
            "detail": self.detail,
        })
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{}] {} ({}): {}", self.group.name(), self.key, self.anchor, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn group(&self, g: Group) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(move |l| l.group == g)
    }

    pub fn to_json(&self) -> Value {
        let failed = self.lines.iter().filter(|l| !l.pass).count();
        json!({
            "pass": self.pass(),
            "checks": self.lines.len(),
            "failed": failed,
            "lines": self.lines.iter().map(CheckLine::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        let failed = self.lines.iter().filter(|l| !l.pass).count();
        out.push_str(&format!("{} checks, {} failed\n", self.lines.len(), failed));
        out
    }
}

struct Lines {
    scope: Scope,
    lines: Vec<CheckLine>,
}

impl Lines {
    fn new(scope: Scope) -> Self {
        Lines { scope, lines: Vec::new() }
    }

    fn push(&mut self, group: Group, key: impl Into<String>, anchor: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            scope: self.scope,
            group,
            key: key.into(),
            anchor: anchor.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// Records `Err` results as failing lines.
    fn push_result(&mut self, group: Group, key: &str, anchor: &str, r: Result<(bool, String)>) {
        match r {
            Ok((pass, detail)) => self.push(group, key, anchor, pass, detail),
            Err(e) => self.push(group, key, anchor, false, format!("error: {e}")),
        }
    }
}

/// Runs the checks of one scope, or of all of them in a fixed order.
pub fn verify(scope: Scope) -> Report {
    let scopes = match scope {
        Scope::All => vec![Scope::Tables, Scope::AnJets, Scope::MutationTheorem, Scope::Annulus, Scope::BraidRelations],
        s => vec![s],
    };
    let mut cache = StokesCache::default();
    let mut lines = Vec::new();
    for s in scopes {
        let part = match s {
            Scope::Tables => tables(),
            Scope::AnJets => an_jets(),
            Scope::MutationTheorem => mutation_theorem(&mut cache, SearchLimits::default()),
            Scope::Annulus => annulus(&mut cache, SearchLimits::default()),
            Scope::BraidRelations => braid_relations(),
            Scope::All => unreachable!(),
        };
        lines.extend(part);
    }
    Report { lines }
}

fn render(m: &PolyMatrix) -> String {
    format!("{:?}", m.to_strings())
}

fn render_rat(m: &RatMatrix) -> String {
    format!("{:?}", m.to_strings())
}

/// Distinct products over the phase chambers, exact or modulo `(s)^p`.
pub fn chamber_products(quiver: &Quiver, basis: &Basis, p: Option<u32>) -> Result<Vec<PolyMatrix>> {
    let mut out: Vec<PolyMatrix> = Vec::new();
    for (_, d) in pipeline(quiver, basis, p)? {
        if !out.contains(&d.product) {
            out.push(d.product);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- tables

/// Values making the parameters of `g` agree with the printed ones: the
/// printed parameter `κ = ⟨α_i, α_j⟩` equals `k_ij` or `−k_ij` depending on
/// the orientation of the pair.
fn parameter_map(t: &TableFixture, g: &GoodQuiver) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for &(i, j) in &t.parameter_pairs {
        let (a, b) = (i - 1, j - 1);
        if let Some(pos) = g.parameters.iter().position(|&pq| pq == (a, b)) {
            // k_ab = ⟨α_b, α_a⟩ = −⟨α_a, α_b⟩.
            out.push((pos, -1));
        } else if let Some(pos) = g.parameters.iter().position(|&pq| pq == (b, a)) {
            out.push((pos, 1));
        } else {
            return Err(Error::Parse(format!("table parameter pair ({i}, {j}) is not free")));
        }
    }
    Ok(out)
}

/// Does the printed arrow table (in the table parameters) describe the same
/// form as `g`, or its negative when `reversed`? Both sides are affine in the
/// parameters, so agreement at the origin and at each unit vector suffices.
fn same_form(t: &TableFixture, entry: &fixtures::TableEntry, g: &GoodQuiver, reversed: bool) -> Result<bool> {
    let n = t.n();
    let m = t.parameters.len();
    if g.parameters.len() != m {
        return Ok(false);
    }
    let net = entry.net_arrows(n, &t.parameters)?;
    let affine = |p: &TruncatedPoly| p.degree().is_none_or(|d| d <= 1);
    if !net.iter().flatten().all(affine) || !g.form.iter().flatten().all(affine) {
        return Err(Error::Parse("parametric forms must be affine".into()));
    }
    let map = parameter_map(t, g)?;
    let sign = if reversed { -1 } else { 1 };
    let mut points = vec![vec![0i64; m]];
    for k in 0..m {
        let mut v = vec![0i64; m];
        v[k] = 1;
        points.push(v);
    }
    for kappa in points {
        let printed: Vec<_> = kappa.iter().map(|&x| rational(x)).collect();
        let mut ours = vec![rational(0); m];
        for (k, &(pos, s)) in map.iter().enumerate() {
            // Reversal negates the form, hence also the parameter.
            ours[pos] = rational(s * sign * kappa[k]);
        }
        for u in 0..n {
            for v in 0..n {
                // ⟨S_u, S_v⟩ = arrows v → u minus arrows u → v.
                let expected = -net[u][v].evaluate(&printed)? * rational(sign);
                if g.form[u][v].evaluate(&ours)? != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A parameter value at which the printed quiver satisfies the constraints
/// of `g`, searched in `[−8, 8]`.
fn admissible_point(g: &GoodQuiver, t: &TableFixture) -> Result<Option<Vec<i64>>> {
    let m = g.parameters.len();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    if m > 1 {
        return Ok(None);
    }
    let map = parameter_map(t, g)?;
    for kappa in -8..=8 {
        if g.constraints_hold_at(&[map[0].1 * kappa])? {
            return Ok(Some(vec![kappa]));
        }
    }
    Ok(None)
}

/// A value of the solution's own parameters at which its constraints hold.
fn own_point(g: &GoodQuiver) -> Result<Option<Vec<i64>>> {
    match g.parameters.len() {
        0 => Ok(Some(Vec::new())),
        1 => {
            for k in -8..=8 {
                if g.constraints_hold_at(&[k])? {
                    return Ok(Some(vec![k]));
                }
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

fn table_entry_check(t: &TableFixture, idx: usize, found: &[GoodQuiver]) -> Result<(bool, String)> {
    let entry = &t.entries[idx];
    let n = t.n();
    let basis = t.basis()?;
    let mut matches = Vec::new();
    for (k, g) in found.iter().enumerate() {
        if same_form(t, entry, g, false)? {
            matches.push(k);
        }
    }
    let Some(&hit) = matches.first() else {
        let printed = entry.stokes()?.truncate(t.p);
        let mut detail = "printed quiver is not among the solutions".to_string();
        for (k, g) in found.iter().enumerate() {
            if let Some(q) = own_point(g)?.map(|v| g.instantiate(&v)).transpose()? {
                if chamber_products(&q, &basis, Some(t.p))? == [printed.clone()] {
                    detail.push_str(&format!(", printed jet is that of solution {} {}", k + 1, g.describe()));
                }
            }
        }
        return Ok((false, detail));
    };
    let g = &found[hit];
    let point = admissible_point(g, t)?;
    let values = point.clone().unwrap_or_else(|| vec![0; t.parameters.len()]);
    let quiver = entry.quiver_at(n, &t.parameters, &values)?;
    let good = check_good(&basis, &quiver.euler_form(), t.p);
    let products = chamber_products(&quiver, &basis, Some(t.p))?;
    let printed = entry.stokes()?.truncate(t.p);
    let jets_ok = products.iter().all(|m| *m == printed);
    let mut detail = format!("solution {}, quiver {}", hit + 1, g.describe());
    if let Some(v) = &point {
        if !v.is_empty() {
            detail.push_str(&format!(", constraints hold at {}={}", t.parameters[0], v[0]));
        }
    } else {
        detail.push_str(", no parameter value in [-8, 8] satisfies the constraints");
    }
    if !good.ok() {
        detail.push_str(", basis not good at that value");
    }
    if jets_ok {
        detail.push_str(&format!(", jet {} in all chambers", render(&printed)));
    } else {
        let shown: Vec<String> = products.iter().map(render).collect();
        detail.push_str(&format!(", jet printed {} computed {}", render(&printed), shown.join(" / ")));
    }
    Ok((jets_ok && good.ok(), detail))
}

fn table_lines(out: &mut Lines, t: &TableFixture) {
    let basis = match t.basis() {
        Ok(b) => b,
        Err(e) => {
            out.push(Group::Table, t.name.clone(), t.anchor.clone(), false, format!("error: {e}"));
            return;
        }
    };
    let found = find_good_quivers(&basis, t.lambda, t.p);
    let expected = if t.complete { t.entries.len() } else { 2 * t.entries.len() };
    // Every solution must be a printed entry or, for half tables, the
    // reverse of one.
    let mut covered = vec![0usize; found.len()];
    for e in &t.entries {
        for (k, g) in found.iter().enumerate() {
            let direct = same_form(t, e, g, false).unwrap_or(false);
            let reversed = !t.complete && same_form(t, e, g, true).unwrap_or(false);
            if direct || reversed {
                covered[k] += 1;
            }
        }
    }
    let all_covered = covered.iter().all(|&c| c == 1);
    out.push(
        Group::Table,
        t.name.clone(),
        t.anchor.clone(),
        found.len() == expected && all_covered,
        format!(
            "{} solutions, {} expected from {} printed entries{}",
            found.len(),
            expected,
            t.entries.len(),
            if all_covered {
                String::new()
            } else {
                let missed: Vec<String> =
                    covered.iter().enumerate().filter(|(_, &c)| c != 1).map(|(k, _)| (k + 1).to_string()).collect();
                format!(", solutions {} not matched exactly once", missed.join(" "))
            }
        ),
    );
    for idx in 0..t.entries.len() {
        let key = format!("{}#{}", t.name, idx + 1);
        out.push_result(Group::Table, &key, &t.anchor, table_entry_check(t, idx, &found));
    }
}

pub fn tables() -> Vec<CheckLine> {
    let mut out = Lines::new(Scope::Tables);
    match fixtures::tables() {
        Ok(ts) => ts.iter().for_each(|t| table_lines(&mut out, t)),
        Err(e) => out.push(Group::Table, "tables", "fixture", false, format!("error: {e}")),
    }
    out.lines
}

// ---------------------------------------------------------------- A_n jets

pub fn an_jets() -> Vec<CheckLine> {
    let mut out = Lines::new(Scope::AnJets);
    for n in 2..=5 {
        let key = format!("A{n}");
        let r = verify_an_jet(n).map(|r| {
            let detail = format!(
                "{} chambers, {} distinct products, interval model {}, I - sum s_i E_(i,i+1) {}",
                r.chambers,
                r.distinct_products,
                if r.model_consistent { "consistent" } else { "inconsistent" },
                if r.matches_an_stokes { "reproduced" } else { "not reproduced" },
            );
            (r.pass(), detail)
        });
        out.push_result(Group::AnStokes, &key, "Stokes matrix of A_n with the triangular basis", r);
    }
    if let Ok(ms) = fixtures::mutations() {
        for m in ms.iter().filter(|m| m.word.is_empty() && m.n <= 3) {
            let r = (|| {
                let q = m.quiver()?;
                let products = chamber_products(&q, &Basis::triangular(m.n), None)?;
                let printed = m.stokes()?.evaluate_joyce()?;
                let values: Vec<RatMatrix> = products.iter().map(|p| p.evaluate_joyce()).collect::<Result<_>>()?;
                let ok = values.iter().all(|v| *v == printed);
                Ok((ok, format!("at s_J {}", render_rat(&printed))))
            })();
            out.push_result(Group::AnStokes, &format!("{}@s_J", m.key), &m.anchor, r);
        }
    }
    let r = (|| {
        let c = fixtures::a4_chambers()?;
        let q = Quiver::linear_a(c.n);
        let b = Basis::triangular(c.n);
        let e = q.euler_form();
        let candidates: Vec<_> = (0..c.n).flat_map(|i| (i + 1..c.n).map(move |j| (i, j))).map(|(i, j)| b.difference(i, j)).collect();
        let chambers = c
            .orders
            .iter()
            .map(|o| generic_chamber(&q, &o.iter().map(|v| v - 1).collect::<Vec<_>>(), &candidates, 0))
            .collect::<Result<Vec<_>>>()?;
        let low = natural_lifts(&b, &e, &DtModel::AnIntervals, &chambers, c.low_order)?;
        let high = natural_lifts(&b, &e, &DtModel::AnIntervals, &chambers, c.high_order)?;
        let expected_low = c.low_lifts()?;
        let low_ok = low.values.len() == expected_low.len() && expected_low.iter().all(|m| low.values.contains(m));
        let high_ok = high.values == vec![c.high_lift()?];
        let detail = format!(
            "mod (s)^{}: {} lifts {}; mod (s)^{}: {} lift{}",
            c.low_order,
            low.values.len(),
            if low_ok { "as printed" } else { "differ from the printed pair" },
            c.high_order,
            high.values.len(),
            if high_ok { ", the A_4 matrix" } else { "s, not unique" },
        );
        Ok((low_ok && high_ok, detail))
    })();
    out.push_result(Group::Chambers, "A4-chambers", "two chambers for A4 with the triangular basis", r);
    out.lines
}

// ---------------------------------------------------------------- mutations

/// Stokes matrices at `s_J` from the pipeline, keyed like the fixtures.
#[derive(Default)]
pub struct StokesCache {
    values: BTreeMap<String, PolyMatrix>,
}

impl StokesCache {
    /// `A{n}/{word}` for mutations of `A_n`; `annulus/S` and `annulus/S'`.
    pub fn polynomial(&mut self, key: &str) -> Result<PolyMatrix> {
        if let Some(m) = self.values.get(key) {
            return Ok(m.clone());
        }
        let products = if let Some(side) = key.strip_prefix("annulus/") {
            let fixture = fixtures::annulus()?;
            let s = fixture
                .sides
                .iter()
                .find(|s| s.key == side)
                .ok_or_else(|| Error::Parse(format!("unknown annulus side {side}")))?;
            chamber_products(&s.quiver()?, &s.basis()?, None)?
        } else {
            let (n, word) = parse_key(key)?;
            let q = Quiver::linear_a(n).mutate_word(&word)?;
            chamber_products(&q, &mutation_basis(&q)?, None)?
        };
        if products.len() != 1 {
            return Err(Error::Parse(format!("{key}: {} different products over the chambers", products.len())));
        }
        self.values.insert(key.to_string(), products[0].clone());
        Ok(products[0].clone())
    }

    pub fn joyce(&mut self, key: &str) -> Result<RatMatrix> {
        self.polynomial(key)?.evaluate_joyce()
    }
}

fn parse_key(key: &str) -> Result<(usize, Vec<usize>)> {
    let bad = || Error::Parse(format!("bad source key {key:?}"));
    let (head, word) = key.split_once('/').ok_or_else(bad)?;
    let n: usize = head.strip_prefix('A').and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let word = if word.is_empty() {
        Vec::new()
    } else {
        word.split(',').map(|w| w.parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    Ok((n, word))
}

/// The printed value for a key, where one exists.
fn printed(key: &str) -> Result<Option<PolyMatrix>> {
    if let Some(side) = key.strip_prefix("annulus/") {
        let a = fixtures::annulus()?;
        return a.sides.iter().find(|s| s.key == side).map(|s| s.stokes()).transpose();
    }
    if let Some(m) = fixtures::mutations()?.into_iter().find(|m| m.key == key) {
        return Ok(Some(m.stokes()?));
    }
    let (n, word) = parse_key(key)?;
    Ok(word.is_empty().then(|| an_stokes(n)))
}

fn relation_line(out: &mut Lines, cache: &mut StokesCache, r: &fixtures::RelationFixture) {
    let word = match r.moves() {
        Ok(m) => BraidWord::new(m),
        Err(e) => {
            out.push(Group::Relation, r.lhs.clone(), r.anchor.clone(), false, format!("error: {e}"));
            return;
        }
    };
    let group = if r.displayed { Group::Relation } else { Group::RelationVariant };
    let key = format!("{} <- {}", r.lhs, r.rhs);
    let on = |lhs: &RatMatrix, rhs: &RatMatrix| -> String {
        match word.apply(rhs) {
            Ok(m) if m == *lhs => "holds".into(),
            Ok(m) if sign_equivalent(&m, lhs) => "holds only up to a sign change".into(),
            Ok(m) => format!("fails, word gives {}", render_rat(&m)),
            Err(e) => format!("not applicable: {e}"),
        }
    };
    let pipeline = (|| -> Result<(RatMatrix, String, bool)> {
        let lhs = cache.joyce(&r.lhs)?;
        let rhs = cache.joyce(&r.rhs)?;
        Ok((lhs.clone(), on(&lhs, &rhs), word.apply(&rhs).is_ok_and(|m| m == lhs)))
    })();
    let printed_status = (|| -> Result<Option<String>> {
        let (Some(l), Some(rh)) = (printed(&r.lhs)?, printed(&r.rhs)?) else {
            return Ok(None);
        };
        Ok(Some(on(&l.evaluate_joyce()?, &rh.evaluate_joyce()?)))
    })();
    match pipeline {
        Ok((lhs, status, pass)) => {
            let mut detail = format!("on computed matrices {status} (target {})", render_rat(&lhs));
            match printed_status {
                Ok(Some(s)) => detail.push_str(&format!("; on printed matrices {s}")),
                Ok(None) => {}
                Err(e) => detail.push_str(&format!("; printed matrices unavailable: {e}")),
            }
            out.push(group, key, r.anchor.clone(), pass, detail);
        }
        Err(e) => out.push(group, key, r.anchor.clone(), false, format!("error: {e}")),
    }
}

fn certificate_line(out: &mut Lines, cache: &mut StokesCache, source: &str, target: &str, anchor: &str, limits: SearchLimits) {
    let key = format!("{source} ~ {target}");
    let r = (|| {
        let s1 = cache.joyce(source)?;
        let s2 = cache.joyce(target)?;
        let start = Instant::now();
        Ok(match equivalent(&s1, &s2, limits)? {
            SearchOutcome::Found(c) => {
                let ok = c.verified && c.replay();
                let detail = format!(
                    "{} braid moves, {} moves in all, replay {} ({:.2?})",
                    c.word.braid_count(),
                    c.word.moves.len(),
                    if ok { "exact" } else { "differs" },
                    start.elapsed()
                );
                (ok, detail)
            }
            SearchOutcome::Inconclusive { states } => {
                (false, format!("inconclusive after {states} states within depth {}", limits.depth))
            }
        })
    })();
    out.push_result(Group::Certificate, &key, anchor, r);
}

pub fn mutation_theorem(cache: &mut StokesCache, limits: SearchLimits) -> Vec<CheckLine> {
    let mut out = Lines::new(Scope::MutationTheorem);
    let ms = match fixtures::mutations() {
        Ok(ms) => ms,
        Err(e) => {
            out.push(Group::MutationMatrix, "mutations", "fixture", false, format!("error: {e}"));
            return out.lines;
        }
    };
    for m in &ms {
        let r = (|| {
            let q = Quiver::linear_a(m.n).mutate_word(&m.word)?;
            if q != m.quiver()? {
                return Ok((false, format!("mutation word gives {q}, listed quiver {}", m.quiver()?)));
            }
            let computed = cache.polynomial(&m.key)?;
            let listed = m.stokes()?;
            if computed == listed {
                return Ok((true, format!("{q} basis {} gives {}", mutation_basis(&q)?.to_json(), render(&listed))));
            }
            let mut diffs = Vec::new();
            for i in 0..m.n {
                for j in 0..m.n {
                    if computed.get(i, j) != listed.get(i, j) {
                        diffs.push(format!("({},{}) printed {} computed {}", i + 1, j + 1, listed.get(i, j), computed.get(i, j)));
                    }
                }
            }
            Ok((false, diffs.join(", ")))
        })();
        out.push_result(Group::MutationMatrix, &m.key, &m.anchor, r);
    }
    match fixtures::relations() {
        Ok(rs) => {
            for r in rs.iter().filter(|r| !r.lhs.starts_with("annulus/")) {
                relation_line(&mut out, cache, r);
            }
        }
        Err(e) => out.push(Group::Relation, "relations", "fixture", false, format!("error: {e}")),
    }
    for m in ms.iter().filter(|m| !m.word.is_empty()) {
        let source = format!("A{}/", m.n);
        certificate_line(&mut out, cache, &source, &m.key, &m.anchor, limits);
    }
    out.lines
}

// ---------------------------------------------------------------- annulus

pub fn annulus(cache: &mut StokesCache, limits: SearchLimits) -> Vec<CheckLine> {
    let mut out = Lines::new(Scope::Annulus);
    let fixture = match fixtures::annulus() {
        Ok(f) => f,
        Err(e) => {
            out.push(Group::AnnulusMatrix, "annulus", "fixture", false, format!("error: {e}"));
            return out.lines;
        }
    };
    for side in &fixture.sides {
        let key = format!("annulus/{}", side.key);
        let r = (|| {
            let good = check_good(&side.basis()?, &side.quiver()?.euler_form(), 3);
            let computed = cache.polynomial(&key)?;
            let listed = side.stokes()?;
            let detail = format!(
                "basis {} at order 3, computed {}, printed {}",
                if good.ok() { "good" } else { "not good" },
                render(&computed),
                render(&listed)
            );
            Ok((good.ok() && computed == listed, detail))
        })();
        out.push_result(Group::AnnulusMatrix, &key, &fixture.anchor, r);
    }
    match fixtures::relations() {
        Ok(rs) => {
            for r in rs.iter().filter(|r| r.lhs.starts_with("annulus/")) {
                relation_line(&mut out, cache, r);
            }
        }
        Err(e) => out.push(Group::Relation, "relations", "fixture", false, format!("error: {e}")),
    }
    certificate_line(&mut out, cache, "annulus/S'", "annulus/S", &fixture.anchor, limits);
    out.lines
}

// ---------------------------------------------------------------- braid group

pub fn braid_relations() -> Vec<CheckLine> {
    let mut out = Lines::new(Scope::BraidRelations);
    for n in 2..=6 {
        let r = verify_braid_group_relations(n, 100, n as u64).map(|r| {
            let detail = format!("{} samples, {} relation checks, {} failures", r.samples, r.checks, r.failures.len());
            (r.pass(), detail)
        });
        out.push_result(Group::BraidRelation, &format!("n={n}"), "braid relations as actions", r);
    }
    out.lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_round_trip() {
        for s in [Scope::Tables, Scope::AnJets, Scope::MutationTheorem, Scope::Annulus, Scope::BraidRelations, Scope::All] {
            assert_eq!(Scope::parse(s.name()).unwrap(), s);
        }
        assert!(Scope::parse("figures").is_err());
    }

    #[test]
    fn an_jets_pass() {
        let r = Report { lines: an_jets() };
        assert!(r.pass(), "{}", r.to_text());
        assert_eq!(r.group(Group::Chambers).count(), 1);
    }

    #[test]
    fn keys_parse() {
        assert_eq!(parse_key("A4/1,2,1").unwrap(), (4, vec![1, 2, 1]));
        assert_eq!(parse_key("A3/").unwrap(), (3, vec![]));
        assert!(parse_key("B3/1").is_err());
    }

    #[test]
    fn cache_reuses_products() {
        let mut cache = StokesCache::default();
        let a = cache.polynomial("A3/2").unwrap();
        assert_eq!(cache.polynomial("A3/2").unwrap(), a);
        assert_eq!(cache.joyce("A3/").unwrap(), an_stokes(3).evaluate_joyce().unwrap());
    }

    #[test]
    fn report_serializes_every_line() {
        let r = Report { lines: braid_relations() };
        let v = r.to_json();
        assert_eq!(v["checks"], json!(r.lines.len()));
        assert_eq!(v["pass"], json!(true));
        assert!(r.to_text().ends_with("0 failed\n"));
    }
}
