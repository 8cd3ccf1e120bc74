//! Checks of the predicted code parameters against computed ones.
//!
//! Predictions, most specific rule first:
//!
//! | modulus                         | field    | length        | dimension     | distance        |
//! |---------------------------------|----------|---------------|---------------|-----------------|
//! | `p1 p2`                         | any      | `(p1-1)(p2-1)`| `p1+p2-3`     | `min(pi - 1)`   |
//! | squarefree, 3 or more primes    | GF(2)    | `\|E\|`       | `\|V\| - 1`   | `min(pi - 1)`   |
//! | any, connected graph            | GF(2)    | `\|E\|`       | `\|V\| - 1`   | `lambda`        |
//! | any, connected bipartite graph  | odd `p`  | `\|E\|`       | `\|V\| - 1`   | `lambda`        |
//!
//! where `lambda` is taken from the `min(pi - 1)` edge-connectivity formula.
//! Anything else gets no prediction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfmat::PrimeField;
use crate::lincode::{code_params, hamming_weight, Budgets, CodeParams, MinDistance};
use crate::modring::{factorize, Modulus};
use crate::zdgraph::{build_graph, edge_connectivity_formula, GraphStats, ZdGraph};

/// Largest `n_max` accepted by [`sweep`].
pub const MAX_SWEEP_MODULUS: u64 = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionSource {
    /// `n = p1 p2`, any field.
    TwoPrimeProduct,
    /// Squarefree `n` with exactly three primes, GF(2).
    ThreePrimeBinary,
    /// Squarefree `n` with four or more primes, GF(2).
    SquarefreeBinary,
    /// Connected graph over GF(2).
    ConnectedBinary,
    /// Connected bipartite graph over an odd prime field.
    ConnectedBipartiteOdd,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub source: PredictionSource,
    pub length: Option<u64>,
    pub dimension: Option<u64>,
    pub distance: Option<u64>,
    /// `min(p_i - 1)`; independent of the field.
    pub edge_connectivity: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Component {
    Length,
    Dimension,
    Distance,
    EdgeConnectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    NotApplicable,
    UnverifiedBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statuses {
    pub length: Status,
    pub dimension: Status,
    pub distance: Status,
    pub edge_connectivity: Status,
}

impl Statuses {
    pub fn get(&self, c: Component) -> Status {
        match c {
            Component::Length => self.length,
            Component::Dimension => self.dimension,
            Component::Distance => self.distance,
            Component::EdgeConnectivity => self.edge_connectivity,
        }
    }

    pub fn mismatches(&self) -> Vec<Component> {
        [
            Component::Length,
            Component::Dimension,
            Component::Distance,
            Component::EdgeConnectivity,
        ]
        .into_iter()
        .filter(|&c| self.get(c) == Status::Mismatch)
        .collect()
    }
}

/// Evidence for a computed value that disagrees with its prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A codeword, given by its nonzero coordinates (edge indices) and values.
    Codeword {
        component: Component,
        weight: usize,
        support: Vec<usize>,
        values: Vec<u8>,
    },
    /// No codeword of weight below `lower` exists.
    SearchBound {
        component: Component,
        lower: usize,
    },
    /// An edge cut `E(W, V - W)` of the given size.
    Cut {
        component: Component,
        side: Vec<u64>,
        size: usize,
    },
    /// Pivot columns of the reduced incidence matrix.
    Rank {
        component: Component,
        rank: usize,
        pivots: Vec<usize>,
    },
    EdgeCount {
        component: Component,
        edges: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u64,
    pub p: u8,
    pub predicted: Prediction,
    pub computed: CodeParams,
    pub graph: GraphStats,
    pub status: Statuses,
    pub witnesses: Vec<Witness>,
    /// Ids of known-discrepancy entries covering this report's mismatches.
    pub known_discrepancies: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn has_mismatch(&self) -> bool {
        !self.status.mismatches().is_empty()
    }

    /// Mismatching components not covered by a known-discrepancy entry.
    pub fn unexplained_mismatches(&self, known: &KnownIssues) -> Vec<Component> {
        let m = factorize(self.n).expect("report modulus is valid");
        self.status
            .mismatches()
            .into_iter()
            .filter(|&c| !known.covers(&m, c))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `n = p^2`.
    PrimeSquare,
}

impl Family {
    fn contains(self, m: &Modulus) -> bool {
        match self {
            Family::PrimeSquare => m.prime_square_root().is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub id: String,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub moduli: Vec<u64>,
    pub components: Vec<Component>,
    pub note: String,
}

impl Discrepancy {
    fn applies_to(&self, m: &Modulus) -> bool {
        self.family.is_some_and(|f| f.contains(m)) || self.moduli.contains(&m.n())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub n: u64,
    #[serde(default)]
    pub p: Option<u8>,
    pub note: String,
}

/// Known discrepancies and per-instance notes, loaded from TOML.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownIssues {
    #[serde(default)]
    pub discrepancy: Vec<Discrepancy>,
    #[serde(default)]
    pub annotation: Vec<Annotation>,
}

const BUILTIN_KNOWN_ISSUES: &str = include_str!("../data/known_discrepancies.toml");

impl KnownIssues {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN_KNOWN_ISSUES).expect("bundled known-discrepancy data parses")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(0, |s| text[..s.start].lines().count()),
            message: e.message().to_string(),
        })
    }

    pub fn covers(&self, m: &Modulus, c: Component) -> bool {
        self.discrepancy
            .iter()
            .any(|d| d.components.contains(&c) && d.applies_to(m))
    }

    fn notes_for(&self, n: u64, p: u8) -> impl Iterator<Item = &str> {
        self.annotation
            .iter()
            .filter(move |a| a.n == n && a.p.is_none_or(|q| q == p))
            .map(|a| a.note.as_str())
    }
}

pub fn predict(m: &Modulus, field: PrimeField) -> Result<Prediction> {
    let g = build_graph(m)?;
    predict_for_graph(&g, g.is_connected(), g.is_bipartite(), field)
}

pub fn predict_for_graph(
    g: &ZdGraph,
    connected: bool,
    bipartite: bool,
    field: PrimeField,
) -> Result<Prediction> {
    let m = g.modulus();
    let lambda = edge_connectivity_formula(m)?;
    let primes: Vec<u64> = m.primes().collect();
    let edges = g.edge_count() as u64;
    let rank = g.vertex_count() as u64 - 1;
    let min_gap = primes.iter().map(|p| p - 1).min().unwrap();
    let full = |source, length, dimension, distance| Prediction {
        source,
        length: Some(length),
        dimension: Some(dimension),
        distance: Some(distance),
        edge_connectivity: lambda,
    };
    let prediction = if m.is_squarefree() && primes.len() == 2 {
        let (p1, p2) = (primes[0], primes[1]);
        full(
            PredictionSource::TwoPrimeProduct,
            (p1 - 1) * (p2 - 1),
            p1 + p2 - 3,
            min_gap,
        )
    } else if m.is_squarefree() && primes.len() >= 3 && field.is_binary() {
        let source = if primes.len() == 3 {
            PredictionSource::ThreePrimeBinary
        } else {
            PredictionSource::SquarefreeBinary
        };
        full(source, edges, rank, min_gap)
    } else if connected && field.is_binary() {
        full(PredictionSource::ConnectedBinary, edges, rank, lambda)
    } else if connected && bipartite {
        full(PredictionSource::ConnectedBipartiteOdd, edges, rank, lambda)
    } else {
        Prediction {
            source: PredictionSource::None,
            length: None,
            dimension: None,
            distance: None,
            edge_connectivity: lambda,
        }
    };
    Ok(prediction)
}

fn compare(predicted: Option<u64>, computed: usize) -> Status {
    match predicted {
        None => Status::NotApplicable,
        Some(v) if v == computed as u64 => Status::Match,
        Some(_) => Status::Mismatch,
    }
}

fn codeword_witness(component: Component, word: &[u8]) -> Witness {
    let support: Vec<usize> = (0..word.len()).filter(|&j| word[j] != 0).collect();
    let values = support.iter().map(|&j| word[j]).collect();
    Witness::Codeword {
        component,
        weight: hamming_weight(word),
        support,
        values,
    }
}

/// Build the graph of `m`, compute the code over `field` and compare with the
/// prediction.
pub fn verify(m: &Modulus, field: PrimeField, budgets: Budgets) -> Result<VerificationReport> {
    verify_with(m, field, budgets, &KnownIssues::builtin())
}

pub fn verify_with(
    m: &Modulus,
    field: PrimeField,
    budgets: Budgets,
    known: &KnownIssues,
) -> Result<VerificationReport> {
    let g = build_graph(m)?;
    let stats = g.stats()?;
    let incidence = g.incidence_matrix(field).matrix;
    let (computed, codeword) = code_params(&incidence, Some(&g), budgets)?;
    let prediction = predict_for_graph(&g, stats.is_connected, stats.is_bipartite, field)?;

    let distance = match (prediction.distance, computed.min_distance) {
        (None, _) => Status::NotApplicable,
        (Some(d), MinDistance::Exact { value }) => {
            if d == value as u64 {
                Status::Match
            } else {
                Status::Mismatch
            }
        }
        (Some(d), interval) => {
            if interval.contains(d as usize) {
                Status::UnverifiedBudget
            } else {
                Status::Mismatch
            }
        }
    };
    let status = Statuses {
        length: compare(prediction.length, computed.length),
        dimension: compare(prediction.dimension, computed.dimension),
        distance,
        edge_connectivity: compare(Some(prediction.edge_connectivity), stats.edge_connectivity),
    };

    let mut witnesses = Vec::new();
    for c in status.mismatches() {
        let w = match c {
            Component::Length => Witness::EdgeCount {
                component: c,
                edges: g.edge_count(),
            },
            Component::Dimension => {
                let pivots = incidence.rref().1;
                Witness::Rank {
                    component: c,
                    rank: pivots.len(),
                    pivots,
                }
            }
            Component::Distance => match computed.min_distance {
                MinDistance::Interval { lower, .. }
                    if prediction.distance.is_some_and(|d| (d as usize) < lower) =>
                {
                    Witness::SearchBound {
                        component: c,
                        lower,
                    }
                }
                _ => codeword_witness(c, &codeword),
            },
            Component::EdgeConnectivity => Witness::Cut {
                component: c,
                side: stats.min_cut.side.clone(),
                size: stats.min_cut.value,
            },
        };
        witnesses.push(w);
    }

    let mut notes: Vec<String> = known
        .notes_for(m.n(), field.p())
        .map(str::to_owned)
        .collect();
    let known_discrepancies: Vec<String> = known
        .discrepancy
        .iter()
        .filter(|d| d.applies_to(m) && status.mismatches().iter().any(|c| d.components.contains(c)))
        .map(|d| {
            notes.push(format!("known discrepancy: {}", d.note));
            d.id.clone()
        })
        .collect();
    match prediction.source {
        PredictionSource::ThreePrimeBinary | PredictionSource::SquarefreeBinary => {
            notes.push(format!(
                "squarefree rule applied to the {} distinct prime factors of n",
                m.prime_count()
            ))
        }
        PredictionSource::TwoPrimeProduct if m.n().is_multiple_of(field.p() as u64) => {
            let holds = [status.length, status.dimension, status.distance]
                .iter()
                .all(|&s| s == Status::Match);
            notes.push(format!(
                "field characteristic {} divides n; the two-prime prediction {} here",
                field.p(),
                if holds { "holds" } else { "is not confirmed" }
            ));
        }
        PredictionSource::None => notes.push(format!(
            "no prediction for a non-bipartite graph over GF({})",
            field.p()
        )),
        _ => {}
    }
    if status.edge_connectivity == Status::Mismatch {
        notes.push(format!(
            "edge connectivity by maximum flow is {}, the min(p - 1) formula gives {}",
            stats.edge_connectivity, prediction.edge_connectivity
        ));
    }

    Ok(VerificationReport {
        n: m.n(),
        p: field.p(),
        predicted: prediction,
        computed,
        graph: stats,
        status,
        witnesses,
        known_discrepancies,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Match,
    KnownDiscrepancy,
    Mismatch,
    UnverifiedBudget,
    NotApplicable,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "entry", rename_all = "kebab-case")]
pub enum SweepEntry {
    Report {
        outcome: Outcome,
        report: Box<VerificationReport>,
    },
    Skipped {
        n: u64,
        p: u8,
        reason: String,
    },
}

impl SweepEntry {
    pub fn outcome(&self) -> Outcome {
        match self {
            SweepEntry::Report { outcome, .. } => *outcome,
            SweepEntry::Skipped { .. } => Outcome::Skipped,
        }
    }

    pub fn report(&self) -> Option<&VerificationReport> {
        match self {
            SweepEntry::Report { report, .. } => Some(report),
            SweepEntry::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub matched: usize,
    pub known_discrepancies: usize,
    pub unexplained_mismatches: usize,
    pub unverified_budget: usize,
    pub not_applicable: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub entries: Vec<SweepEntry>,
    pub summary: SweepSummary,
}

/// Classify a report for sweep bookkeeping.
pub fn outcome_of(report: &VerificationReport, known: &KnownIssues) -> Outcome {
    let s = report.status;
    if report.has_mismatch() {
        if report.unexplained_mismatches(known).is_empty() {
            Outcome::KnownDiscrepancy
        } else {
            Outcome::Mismatch
        }
    } else if [s.length, s.dimension, s.distance].contains(&Status::UnverifiedBudget) {
        Outcome::UnverifiedBudget
    } else if [s.length, s.dimension, s.distance]
        .iter()
        .all(|&x| x == Status::NotApplicable)
    {
        Outcome::NotApplicable
    } else {
        Outcome::Match
    }
}

/// Verify every composite `n <= n_max` against every field in `fields`, in
/// `(n, p)` order. Degenerate moduli are listed as skipped; primes are left out.
pub fn sweep(
    n_max: u64,
    fields: &[PrimeField],
    budgets: Budgets,
    known: &KnownIssues,
) -> Result<Sweep> {
    if n_max > MAX_SWEEP_MODULUS {
        return Err(Error::InvalidInput(format!(
            "sweep bound {n_max} exceeds {MAX_SWEEP_MODULUS}"
        )));
    }
    let mut jobs = Vec::new();
    for n in 4..=n_max {
        let m = factorize(n)?;
        if m.is_prime() {
            continue;
        }
        for &f in fields {
            jobs.push((m.clone(), f));
        }
    }
    let entries: Vec<SweepEntry> = jobs
        .par_iter()
        .map(|(m, f)| match verify_with(m, *f, budgets, known) {
            Ok(report) => Ok(SweepEntry::Report {
                outcome: outcome_of(&report, known),
                report: Box::new(report),
            }),
            Err(e) if e.is_degenerate() => Ok(SweepEntry::Skipped {
                n: m.n(),
                p: f.p(),
                reason: e.to_string(),
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let mut summary = SweepSummary {
        rows: entries.len(),
        ..Default::default()
    };
    for e in &entries {
        match e.outcome() {
            Outcome::Match => summary.matched += 1,
            Outcome::KnownDiscrepancy => summary.known_discrepancies += 1,
            Outcome::Mismatch => summary.unexplained_mismatches += 1,
            Outcome::UnverifiedBudget => summary.unverified_budget += 1,
            Outcome::NotApplicable => summary.not_applicable += 1,
            Outcome::Skipped => summary.skipped += 1,
        }
    }
    Ok(Sweep { entries, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn report(n: u64, p: u64) -> VerificationReport {
        verify(&factorize(n).unwrap(), gf(p), Budgets::default()).unwrap()
    }

    fn triple(p: &Prediction) -> (Option<u64>, Option<u64>, Option<u64>) {
        (p.length, p.dimension, p.distance)
    }

    #[test]
    fn predictions() {
        let p = predict(&factorize(15).unwrap(), gf(3)).unwrap();
        assert_eq!(p.source, PredictionSource::TwoPrimeProduct);
        assert_eq!(triple(&p), (Some(8), Some(5), Some(2)));

        let p = predict(&factorize(30).unwrap(), gf(2)).unwrap();
        assert_eq!(p.source, PredictionSource::ThreePrimeBinary);
        assert_eq!(triple(&p), (Some(38), Some(20), Some(1)));

        let p = predict(&factorize(30).unwrap(), gf(3)).unwrap();
        assert_eq!(p.source, PredictionSource::None);
        assert_eq!(triple(&p), (None, None, None));

        let p = predict(&factorize(210).unwrap(), gf(2)).unwrap();
        assert_eq!(p.source, PredictionSource::SquarefreeBinary);

        let p = predict(&factorize(9).unwrap(), gf(2)).unwrap();
        assert_eq!(p.source, PredictionSource::ConnectedBinary);
        assert_eq!(triple(&p), (Some(1), Some(1), Some(2)));

        let p = predict(&factorize(8).unwrap(), gf(3)).unwrap();
        assert_eq!(p.source, PredictionSource::ConnectedBipartiteOdd);

        assert_eq!(
            predict(&factorize(4).unwrap(), gf(2)),
            Err(Error::NoEdges { n: 4 })
        );
    }

    #[test]
    fn z15_matches_for_every_field() {
        for p in [2, 3, 5, 7] {
            let r = report(15, p);
            assert_eq!(r.computed.to_string(), format!("[8, 5, 2]_{p}"));
            assert!(r.status.mismatches().is_empty());
            assert_eq!(r.status.distance, Status::Match);
            assert!(r.witnesses.is_empty());
        }
    }

    #[test]
    fn z15_characteristic_dividing_n_is_noted() {
        let r = report(15, 5);
        assert!(r
            .notes
            .iter()
            .any(|n| n.contains("divides n") && n.contains("holds")));
    }

    #[test]
    fn z30_binary() {
        let r = report(30, 2);
        assert_eq!(r.computed.to_string(), "[38, 20, 1]_2");
        assert!(!r.has_mismatch());
        assert!(r.notes.iter().any(|n| n.contains("dimension is 5")));
    }

    #[test]
    fn z9_lambda_formula_fails() {
        let r = report(9, 2);
        assert_eq!(r.computed.to_string(), "[1, 1, 1]_2");
        assert_eq!(r.status.edge_connectivity, Status::Mismatch);
        assert_eq!(r.status.distance, Status::Mismatch);
        assert_eq!(r.status.dimension, Status::Match);
        assert_eq!(
            r.known_discrepancies,
            vec!["prime-square-edge-connectivity"]
        );
        assert!(r.witnesses.contains(&Witness::Cut {
            component: Component::EdgeConnectivity,
            side: vec![3],
            size: 1
        }));
        assert!(r.unexplained_mismatches(&KnownIssues::builtin()).is_empty());
        assert!(!r.unexplained_mismatches(&KnownIssues::default()).is_empty());
    }

    #[test]
    fn odd_field_on_non_bipartite_graph() {
        let r = report(30, 3);
        assert_eq!(r.status.distance, Status::NotApplicable);
        assert_eq!(r.status.dimension, Status::NotApplicable);
        assert_eq!(
            outcome_of(&r, &KnownIssues::builtin()),
            Outcome::NotApplicable
        );
    }

    #[test]
    fn interval_distance_is_unverified() {
        let tight = Budgets {
            enumeration: 1,
            search: 0,
        };
        let r = verify(&factorize(35).unwrap(), gf(3), tight).unwrap();
        assert_eq!(
            r.computed.min_distance,
            MinDistance::Interval { lower: 1, upper: 4 }
        );
        assert_eq!(r.status.distance, Status::UnverifiedBudget);
        assert_eq!(
            outcome_of(&r, &KnownIssues::builtin()),
            Outcome::UnverifiedBudget
        );
    }

    #[test]
    fn known_issue_parsing() {
        let known = KnownIssues::builtin();
        assert_eq!(known.discrepancy.len(), 1);
        let m25 = factorize(25).unwrap();
        assert!(known.covers(&m25, Component::EdgeConnectivity));
        assert!(!known.covers(&m25, Component::Dimension));
        assert!(!known.covers(&factorize(27).unwrap(), Component::EdgeConnectivity));

        let custom = KnownIssues::from_toml(
            "[[discrepancy]]\nid = \"x\"\nmoduli = [12]\ncomponents = [\"length\"]\nnote = \"n\"\n",
        )
        .unwrap();
        assert!(custom.covers(&factorize(12).unwrap(), Component::Length));
        assert!(KnownIssues::from_toml("[[discrepancy]]\nid = 3\n").is_err());
    }

    #[test]
    fn small_sweeps() {
        let known = KnownIssues::builtin();
        let s = sweep(6, &[gf(2)], Budgets::default(), &known).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert!(matches!(&s.entries[0], SweepEntry::Skipped { n: 4, .. }));
        let r6 = s.entries[1].report().unwrap();
        assert_eq!(r6.n, 6);
        assert_eq!(r6.computed.to_string(), "[2, 2, 1]_2");

        let s = sweep(5, &[gf(2)], Budgets::default(), &known).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.summary.skipped, 1);

        let s = sweep(3, &[gf(2)], Budgets::default(), &known).unwrap();
        assert!(s.entries.is_empty());

        assert!(sweep(MAX_SWEEP_MODULUS + 1, &[gf(2)], Budgets::default(), &known).is_err());
    }

    #[test]
    fn sweep_to_100_binary() {
        let known = KnownIssues::builtin();
        let s = sweep(100, &[gf(2)], Budgets::default(), &known).unwrap();
        assert_eq!(s.summary.unexplained_mismatches, 0);
        let known_n: Vec<u64> = s
            .entries
            .iter()
            .filter(|e| e.outcome() == Outcome::KnownDiscrepancy)
            .map(|e| e.report().unwrap().n)
            .collect();
        assert_eq!(known_n, vec![9, 25, 49]);
    }

    #[test]
    fn bipartite_two_prime_instances_match_over_gf3() {
        let known = KnownIssues::builtin();
        let s = sweep(50, &[gf(3)], Budgets::default(), &known).unwrap();
        let two_prime: Vec<_> = s
            .entries
            .iter()
            .filter_map(SweepEntry::report)
            .filter(|r| {
                r.graph.is_bipartite && r.predicted.source == PredictionSource::TwoPrimeProduct
            })
            .collect();
        assert!(!two_prime.is_empty());
        assert!(two_prime.iter().all(|r| !r.has_mismatch()));
    }

    #[test]
    fn reruns_are_identical() {
        let a = report(49, 2);
        let b = report(49, 2);
        assert_eq!(a, b);
    }
}
