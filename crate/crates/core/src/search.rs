//! Experiments and searches over partitions: the merge/split discrimination
//! experiment, lower-convex-hull scoring of candidate partitions, and
//! exhaustive or greedy minimization of the contextual and syntactic
//! objectives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infotheory::{
    information, mutual_information, InfoReport, LogBase, DEGENERATE_TOLERANCE, INFO_TOLERANCE,
};
use crate::language::StochasticLanguage;
use crate::oracle::{enumerate_partitions, MAX_ENUMERATION_VOCAB};
use crate::partition::Partition;

/// Objective ties closer than this are broken structurally.
const TIE_TOLERANCE: f64 = 1e-12;

/// The two selection programs, both minimized.
#[derive(Debug, Clone)]
pub enum Objective {
    /// `I_L(P)(1 - γ) - I_L̄(P)`
    Contextual { gamma: f64 },
    /// `max_{P*} I_L(P; P*) - μ I_L(P)` over a fixed pool of contextual
    /// partitions.
    Syntactic { mu: f64, pool: Vec<Partition> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub objective: f64,
    pub information: f64,
    pub information_shuffled: f64,
    /// Largest MI against the pool; zero in contextual mode.
    pub max_mutual_information: f64,
}

impl Objective {
    pub fn validate(&self) -> Result<()> {
        match self {
            Objective::Contextual { gamma } if gamma.is_nan() || *gamma < 0.0 => Err(
                Error::validation(format!("gamma must be non-negative, got {gamma}")),
            ),
            Objective::Syntactic { mu, .. } if mu.is_nan() || *mu < 0.0 => Err(Error::validation(
                format!("mu must be non-negative, got {mu}"),
            )),
            Objective::Syntactic { pool, .. } if pool.is_empty() => Err(Error::validation(
                "syntactic objective needs at least one contextual partition",
            )),
            _ => Ok(()),
        }
    }

    pub fn evaluate(
        &self,
        language: &StochasticLanguage,
        partition: &Partition,
        base: LogBase,
    ) -> Result<Evaluation> {
        let info = information(language, partition, base)?;
        Ok(match self {
            Objective::Contextual { gamma } => Evaluation {
                objective: info.information * (1.0 - gamma) - info.information_shuffled,
                information: info.information,
                information_shuffled: info.information_shuffled,
                max_mutual_information: 0.0,
            },
            Objective::Syntactic { mu, pool } => {
                let mut max_mi = f64::NEG_INFINITY;
                for reference in pool {
                    let mi = mutual_information(language, partition, reference, base)?;
                    max_mi = max_mi.max(mi.mutual_information);
                }
                Evaluation {
                    objective: max_mi - mu * info.information,
                    information: info.information,
                    information_shuffled: info.information_shuffled,
                    max_mutual_information: max_mi,
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    MergeBaseline,
    SyntacticSplit,
    TopicSplit,
    RandomSplit,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::MergeBaseline => "merge-baseline",
            Scenario::SyntacticSplit => "syntactic-split",
            Scenario::TopicSplit => "topic-split",
            Scenario::RandomSplit => "random-split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub scenario: Scenario,
    /// Seed of a random split.
    pub seed: Option<u64>,
    pub num_categories: usize,
    pub information: f64,
    pub information_shuffled: f64,
    pub delta_information: f64,
    /// MI against the contextual reference partition.
    pub mutual_information: f64,
    pub delta_mutual_information: f64,
    /// `ΔMI / ΔI`; undefined when `ΔI` is negligible.
    pub ratio: Option<f64>,
    /// Whether the μ rule accepts the split over the merged baseline.
    pub selected: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSplitSummary {
    pub runs: usize,
    pub mean_ratio: Option<f64>,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub mean_delta_information: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitExperimentReport {
    pub pair: String,
    pub log_base: LogBase,
    pub mu: Option<f64>,
    pub scenarios: Vec<ScenarioResult>,
    pub random_summary: RandomSplitSummary,
}

impl SplitExperimentReport {
    pub fn scenario(&self, which: Scenario) -> Option<&ScenarioResult> {
        self.scenarios.iter().find(|s| s.scenario == which)
    }

    pub fn random_runs(&self) -> impl Iterator<Item = &ScenarioResult> {
        self.scenarios
            .iter()
            .filter(|s| s.scenario == Scenario::RandomSplit)
    }
}

#[derive(Debug, Clone)]
pub struct SplitOptions {
    /// First seed; random split `i` uses `seed + i`.
    pub seed: u64,
    /// Number of random splits.
    pub random_runs: usize,
    /// Number of parts in each random split.
    pub random_parts: usize,
    pub mu: Option<f64>,
    pub base: LogBase,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions {
            seed: 0,
            random_runs: 10,
            random_parts: 2,
            mu: None,
            base: LogBase::Two,
        }
    }
}

/// Merges two categories of the syntactic gold partition, then splits the
/// merged category back syntactically, by the contextual partition, and
/// at random, scoring each split against the merge.
pub fn split_experiment(
    language: &StochasticLanguage,
    syntactic: &Partition,
    contextual: &Partition,
    pair: (u32, u32),
    options: &SplitOptions,
) -> Result<SplitExperimentReport> {
    let (a, b) = pair;
    if a == b {
        return Err(Error::validation(
            "split experiment needs two distinct categories",
        ));
    }
    let label = |c: u32| {
        syntactic
            .label(c)
            .map(str::to_owned)
            .ok_or_else(|| Error::validation(format!("unknown category id {c}")))
    };
    let pair_label = format!("{}+{}", label(a)?, label(b)?);
    let merged = syntactic.merge_categories(&[a, b], &pair_label)?;
    let merged_id = merged
        .category_id(&pair_label)
        .ok_or_else(|| Error::Internal("merged category missing".into()))?;

    let base = options.base;
    let score = |p: &Partition| -> Result<(InfoReport, f64)> {
        Ok((
            information(language, p, base)?,
            mutual_information(language, p, contextual, base)?.mutual_information,
        ))
    };
    let (base_info, base_mi) = score(&merged)?;

    let mut scenarios = vec![ScenarioResult {
        scenario: Scenario::MergeBaseline,
        seed: None,
        num_categories: merged.num_categories(),
        information: base_info.information,
        information_shuffled: base_info.information_shuffled,
        delta_information: 0.0,
        mutual_information: base_mi,
        delta_mutual_information: 0.0,
        ratio: None,
        selected: None,
    }];

    let mut splits: Vec<(Scenario, Option<u64>, Partition)> = vec![
        (Scenario::SyntacticSplit, None, syntactic.clone()),
        (
            Scenario::TopicSplit,
            None,
            merged.split_category_by_annotation(merged_id, contextual)?,
        ),
    ];
    for i in 0..options.random_runs {
        let seed = options.seed.wrapping_add(i as u64);
        splits.push((
            Scenario::RandomSplit,
            Some(seed),
            merged.split_category_random(merged_id, options.random_parts, seed)?,
        ));
    }

    for (scenario, seed, partition) in splits {
        let (info, mi) = score(&partition)?;
        let delta = info.information - base_info.information;
        if delta < -INFO_TOLERANCE {
            return Err(Error::Internal(format!(
                "{} lost information: ΔI = {delta}",
                scenario.as_str()
            )));
        }
        let delta_mi = mi - base_mi;
        let ratio = (delta > INFO_TOLERANCE).then(|| delta_mi / delta);
        let selected = options.mu.map(|mu| match ratio {
            Some(r) => r <= mu + DEGENERATE_TOLERANCE,
            None => delta_mi <= DEGENERATE_TOLERANCE,
        });
        scenarios.push(ScenarioResult {
            scenario,
            seed,
            num_categories: partition.num_categories(),
            information: info.information,
            information_shuffled: info.information_shuffled,
            delta_information: delta.max(0.0),
            mutual_information: mi,
            delta_mutual_information: delta_mi,
            ratio,
            selected,
        });
    }

    let random: Vec<&ScenarioResult> = scenarios
        .iter()
        .filter(|s| s.scenario == Scenario::RandomSplit)
        .collect();
    let ratios: Vec<f64> = random.iter().filter_map(|s| s.ratio).collect();
    let random_summary = RandomSplitSummary {
        runs: random.len(),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        min_ratio: ratios.iter().copied().reduce(f64::min),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        mean_delta_information: if random.is_empty() {
            0.0
        } else {
            random.iter().map(|s| s.delta_information).sum::<f64>() / random.len() as f64
        },
    };

    Ok(SplitExperimentReport {
        pair: pair_label,
        log_base: base,
        mu: options.mu,
        scenarios,
        random_summary,
    })
}

#[derive(Debug, Clone)]
pub enum HullMode {
    /// `y = I_L(P) - I_L̄(P)`
    Contextual,
    /// `y = I_L(P; P*)`
    Syntactic { reference: Partition },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
    pub on_hull: bool,
}

/// Edge of the lower hull; `slope` is the γ (or μ) at which both ends
/// minimize the objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullSegment {
    pub from: String,
    pub to: String,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub log_base: LogBase,
    pub points: Vec<HullPoint>,
    pub segments: Vec<HullSegment>,
}

/// Scores each candidate as `x = I_L(P)` against the mode's `y`, and marks
/// the points lying on the lower convex hull.
pub fn hull_points(
    language: &StochasticLanguage,
    candidates: &[(String, Partition)],
    mode: &HullMode,
    base: LogBase,
) -> Result<HullReport> {
    if candidates.len() < 2 {
        return Err(Error::validation(
            "hull needs at least two candidate partitions",
        ));
    }
    let mut points = Vec::with_capacity(candidates.len());
    for (label, p) in candidates {
        let info = information(language, p, base)?;
        let y = match mode {
            HullMode::Contextual => info.contextuality_gap,
            HullMode::Syntactic { reference } => {
                mutual_information(language, p, reference, base)?.mutual_information
            }
        };
        points.push(HullPoint {
            label: label.clone(),
            x: info.information,
            y,
            on_hull: false,
        });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.x, p.y)).collect();
    let vertices = lower_hull(&xy);
    for (i, p) in points.iter_mut().enumerate() {
        p.on_hull = on_lower_envelope(&xy, &vertices, i);
    }
    let segments = vertices
        .windows(2)
        .map(|w| HullSegment {
            from: points[w[0]].label.clone(),
            to: points[w[1]].label.clone(),
            slope: (xy[w[1]].1 - xy[w[0]].1) / (xy[w[1]].0 - xy[w[0]].0),
        })
        .collect();
    Ok(HullReport {
        log_base: base,
        points,
        segments,
    })
}

const HULL_TOLERANCE: f64 = 1e-9;

/// Indices of the lower hull vertices, left to right, without collinear
/// interior points.
fn lower_hull(xy: &[(f64, f64)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..xy.len()).collect();
    order.sort_by(|&i, &j| {
        xy[i]
            .0
            .total_cmp(&xy[j].0)
            .then(xy[i].1.total_cmp(&xy[j].1))
            .then(i.cmp(&j))
    });
    // lowest point per x, where x values within tolerance count as equal
    let mut lowest: Vec<usize> = Vec::with_capacity(order.len());
    for i in order {
        match lowest.last_mut() {
            Some(last) if (xy[i].0 - xy[*last].0).abs() <= HULL_TOLERANCE => {
                if xy[i].1 < xy[*last].1 {
                    *last = i;
                }
            }
            _ => lowest.push(i),
        }
    }
    let cross = |o: usize, a: usize, b: usize| {
        (xy[a].0 - xy[o].0) * (xy[b].1 - xy[o].1) - (xy[a].1 - xy[o].1) * (xy[b].0 - xy[o].0)
    };
    let mut hull: Vec<usize> = Vec::new();
    for i in lowest {
        while hull.len() >= 2
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], i) <= HULL_TOLERANCE
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull
}

fn on_lower_envelope(xy: &[(f64, f64)], vertices: &[usize], i: usize) -> bool {
    let (x, y) = xy[i];
    let envelope = vertices
        .windows(2)
        .find(|w| xy[w[0]].0 - HULL_TOLERANCE <= x && x <= xy[w[1]].0 + HULL_TOLERANCE)
        .map(|w| {
            let (x0, y0) = xy[w[0]];
            let (x1, y1) = xy[w[1]];
            let t = ((x - x0) / (x1 - x0)).clamp(0.0, 1.0);
            y0 + t * (y1 - y0)
        })
        .unwrap_or_else(|| xy[vertices[0]].1);
    y <= envelope + HULL_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub step: usize,
    pub description: String,
    pub objective: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best: Partition,
    pub evaluation: Evaluation,
    /// Objective after each accepted step, starting with the initial value.
    pub trace: Vec<f64>,
    pub moves: Vec<MoveRecord>,
    pub evaluated: usize,
}

/// Evaluates the objective on every deterministic partition with at most
/// `max_categories` categories. Ties are broken by fewer categories, then
/// by the partition's restricted growth string.
pub fn exhaustive_search(
    language: &StochasticLanguage,
    num_words: usize,
    max_categories: usize,
    objective: &Objective,
    base: LogBase,
) -> Result<SearchResult> {
    objective.validate()?;
    if num_words > MAX_ENUMERATION_VOCAB {
        return Err(Error::Resource(format!(
            "exhaustive search over {num_words} words (limit {MAX_ENUMERATION_VOCAB})"
        )));
    }
    let mut best: Option<(Vec<u32>, usize, Evaluation)> = None;
    let mut trace = Vec::new();
    let mut moves = Vec::new();
    let mut evaluated = 0;
    for rgs in enumerate_partitions(num_words, max_categories)? {
        let partition = Partition::from_rgs(&rgs)?;
        let eval = objective.evaluate(language, &partition, base)?;
        evaluated += 1;
        let k = partition.num_categories();
        let better = match &best {
            None => true,
            Some((best_rgs, best_k, best_eval)) => {
                let d = eval.objective - best_eval.objective;
                d < -TIE_TOLERANCE || (d.abs() <= TIE_TOLERANCE && (k, &rgs) < (*best_k, best_rgs))
            }
        };
        if better {
            trace.push(eval.objective);
            moves.push(MoveRecord {
                step: evaluated,
                description: format!("partition {rgs:?}"),
                objective: eval.objective,
                accepted: true,
            });
            best = Some((rgs, k, eval));
        }
    }
    let (rgs, _, evaluation) = best.ok_or_else(|| Error::validation("no partitions to search"))?;
    Ok(SearchResult {
        best: Partition::from_rgs(&rgs)?,
        evaluation,
        trace,
        moves,
        evaluated,
    })
}

/// Moves available to [`greedy_search`].
#[derive(Debug, Clone, Default)]
pub struct MoveSet {
    /// Merge any two categories.
    pub merge: bool,
    /// Split a category by each of these annotation partitions. The new
    /// parts are then merged pairwise while that lowers the objective.
    pub annotations: Vec<(String, Partition)>,
    /// Random whole-word splits of a category: `(parts, seeds)`.
    pub random_split: Option<(usize, Vec<u64>)>,
}

/// Hill climbing from `p_nul`: every step applies the single move with the
/// lowest objective, as long as it strictly improves on the current value.
pub fn greedy_search(
    language: &StochasticLanguage,
    num_words: usize,
    objective: &Objective,
    moves: &MoveSet,
    max_iterations: usize,
    base: LogBase,
) -> Result<SearchResult> {
    objective.validate()?;
    let mut current = Partition::p_nul(num_words)?;
    let mut eval = objective.evaluate(language, &current, base)?;
    let mut trace = vec![eval.objective];
    let mut log = Vec::new();
    let mut evaluated = 1;

    for step in 1..=max_iterations {
        let mut best: Option<(String, Partition, Evaluation)> = None;
        let mut consider = |desc: String, p: Partition, e: Evaluation| {
            if best
                .as_ref()
                .is_none_or(|(_, _, b)| e.objective < b.objective - TIE_TOLERANCE)
            {
                best = Some((desc, p, e));
            }
        };
        let k = current.num_categories() as u32;
        if moves.merge {
            for a in 0..k {
                for b in a + 1..k {
                    let p = merge_pair(&current, a, b)?;
                    let e = objective.evaluate(language, &p, base)?;
                    evaluated += 1;
                    consider(
                        format!(
                            "merge {} and {}",
                            current.labels()[a as usize],
                            current.labels()[b as usize]
                        ),
                        p,
                        e,
                    );
                }
            }
        }
        for (name, annotation) in &moves.annotations {
            for c in 0..k {
                let split = current.split_category_by_annotation(c, annotation)?;
                if split.num_categories() <= current.num_categories() {
                    continue;
                }
                let (p, e, n) = consolidate(language, &current, split, objective, base)?;
                evaluated += n;
                consider(
                    format!("split {} by {name}", current.labels()[c as usize]),
                    p,
                    e,
                );
            }
        }
        if let Some((parts, seeds)) = &moves.random_split {
            for c in 0..k {
                for &seed in seeds {
                    let p = current.split_category_random(c, *parts, seed)?;
                    if p.num_categories() <= current.num_categories() {
                        continue;
                    }
                    let e = objective.evaluate(language, &p, base)?;
                    evaluated += 1;
                    consider(
                        format!(
                            "split {} at random (seed {seed})",
                            current.labels()[c as usize]
                        ),
                        p,
                        e,
                    );
                }
            }
        }
        let Some((desc, p, e)) = best else { break };
        let accepted = e.objective < eval.objective - TIE_TOLERANCE;
        log.push(MoveRecord {
            step,
            description: desc,
            objective: e.objective,
            accepted,
        });
        if !accepted {
            break;
        }
        current = p;
        eval = e;
        trace.push(eval.objective);
    }

    Ok(SearchResult {
        best: current,
        evaluation: eval,
        trace,
        moves: log,
        evaluated,
    })
}

fn merge_pair(p: &Partition, a: u32, b: u32) -> Result<Partition> {
    let base = format!("{}+{}", p.labels()[a as usize], p.labels()[b as usize]);
    let mut label = base.clone();
    while p.category_id(&label).is_some() {
        label.push('\'');
    }
    p.merge_categories(&[a, b], &label)
}

/// Merges pairs among the categories `split` introduced over `before`,
/// greedily, while the objective does not increase.
fn consolidate(
    language: &StochasticLanguage,
    before: &Partition,
    mut split: Partition,
    objective: &Objective,
    base: LogBase,
) -> Result<(Partition, Evaluation, usize)> {
    let mut eval = objective.evaluate(language, &split, base)?;
    let mut evaluated = 1;
    loop {
        let fresh: Vec<u32> = (0..split.num_categories() as u32)
            .filter(|&c| before.category_id(&split.labels()[c as usize]).is_none())
            .collect();
        let mut best: Option<(Partition, Evaluation)> = None;
        for (i, &a) in fresh.iter().enumerate() {
            for &b in &fresh[i + 1..] {
                let p = merge_pair(&split, a, b)?;
                let e = objective.evaluate(language, &p, base)?;
                evaluated += 1;
                if best
                    .as_ref()
                    .is_none_or(|(_, be)| e.objective < be.objective - TIE_TOLERANCE)
                {
                    best = Some((p, e));
                }
            }
        }
        match best {
            Some((p, e)) if e.objective <= eval.objective + TIE_TOLERANCE => {
                split = p;
                eval = e;
            }
            _ => return Ok((split, eval, evaluated)),
        }
    }
}

/// Membership of each word over the positions it occupies,
/// `π(k | v) ∝ Σ_w p(w) [w_k = v]`. Words absent from the language go to
/// the first position.
pub fn position_partition(language: &StochasticLanguage, num_words: usize) -> Result<Partition> {
    let mut counts = vec![BTreeMap::new(); num_words];
    for (seq, p) in language.iter() {
        for (k, &w) in seq.iter().enumerate() {
            let row = counts.get_mut(w as usize).ok_or_else(|| {
                Error::validation(format!("word id {w} outside a vocabulary of {num_words}"))
            })?;
            *row.entry(k as u32).or_insert(0.0) += p;
        }
    }
    let labels = (1..=language.n()).map(|k| format!("pos{k}")).collect();
    Partition::new(labels, normalize_rows(counts))
}

/// Membership of each word over the support sequences it occurs in,
/// `π(w | v) ∝ p(w) · #v(w)`. One category per sequence, so only sensible
/// for small languages.
pub fn sequence_partition(language: &StochasticLanguage, num_words: usize) -> Result<Partition> {
    let mut counts = vec![BTreeMap::new(); num_words];
    for (i, (seq, p)) in language.iter().enumerate() {
        for &w in seq {
            let row = counts.get_mut(w as usize).ok_or_else(|| {
                Error::validation(format!("word id {w} outside a vocabulary of {num_words}"))
            })?;
            *row.entry(i as u32).or_insert(0.0) += p;
        }
    }
    let labels = (1..=language.support_size())
        .map(|i| format!("seq{i}"))
        .collect();
    Partition::new(labels, normalize_rows(counts))
}

fn normalize_rows(counts: Vec<BTreeMap<u32, f64>>) -> Vec<Vec<(u32, f64)>> {
    counts
        .into_iter()
        .map(|row| {
            let total: f64 = row.values().sum();
            if total > 0.0 {
                row.into_iter().map(|(c, m)| (c, m / total)).collect()
            } else {
                vec![(0, 1.0)]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::toy;
    use approx::assert_abs_diff_eq;

    const B: LogBase = LogBase::Two;

    fn named(ps: &[(&str, &Partition)]) -> Vec<(String, Partition)> {
        ps.iter()
            .map(|(n, p)| (n.to_string(), (*p).clone()))
            .collect()
    }

    #[test]
    fn objective_rejects_bad_parameters() {
        assert!(Objective::Contextual { gamma: -1.0 }.validate().is_err());
        assert!(Objective::Syntactic {
            mu: 0.1,
            pool: vec![]
        }
        .validate()
        .is_err());
        assert!(Objective::Contextual { gamma: f64::NAN }
            .validate()
            .is_err());
    }

    #[test]
    fn contextual_hull_on_toy() {
        let t = toy();
        let nul = Partition::p_nul(10).unwrap();
        let report = hull_points(
            &t.language,
            &named(&[("nul", &nul), ("P1", &t.p1), ("P2", &t.p2)]),
            &HullMode::Contextual,
            B,
        )
        .unwrap();
        let p1 = &report.points[1];
        assert!(p1.on_hull);
        assert_abs_diff_eq!(p1.x, 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p1.y, 0.0, epsilon = 1e-9);
        let p2 = &report.points[2];
        assert!(!p2.on_hull);
        assert_abs_diff_eq!(p2.y, 3f64.log2(), epsilon = 1e-9);
        assert_eq!(report.segments.len(), 1);
        assert_abs_diff_eq!(report.segments[0].slope, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn hull_needs_two_candidates() {
        let t = toy();
        assert!(hull_points(
            &t.language,
            &named(&[("P1", &t.p1)]),
            &HullMode::Contextual,
            B
        )
        .is_err());
    }

    #[test]
    fn lower_hull_handles_duplicates_and_collinear_points() {
        let xy = [
            (0.0, 0.0),
            (1.0, 1.0),
            (2.0, 2.0),
            (1.0, 5.0),
            (0.0, 0.0),
            (2.0, -1.0),
        ];
        let v = lower_hull(&xy);
        assert_eq!(v, vec![0, 5]);
        let flags: Vec<bool> = (0..xy.len())
            .map(|i| on_lower_envelope(&xy, &v, i))
            .collect();
        assert_eq!(flags, vec![true, false, false, false, true, true]);
        let line = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)];
        let v = lower_hull(&line);
        assert_eq!(v, vec![0, 2]);
        assert!(on_lower_envelope(&line, &v, 1));
    }

    #[test]
    fn max_iterations_zero_returns_start() {
        let t = toy();
        let moves = MoveSet {
            merge: true,
            ..Default::default()
        };
        let r = greedy_search(
            &t.language,
            10,
            &Objective::Contextual { gamma: 1e-6 },
            &moves,
            0,
            B,
        )
        .unwrap();
        assert_eq!(r.best.num_categories(), 1);
        assert!(r.moves.is_empty());
        assert_eq!(r.trace.len(), 1);
    }

    #[test]
    fn exhaustive_with_one_category_is_p_nul() {
        let t = toy();
        let r = exhaustive_search(&t.language, 10, 1, &Objective::Contextual { gamma: 0.1 }, B)
            .unwrap();
        assert_eq!(r.evaluated, 1);
        assert_eq!(
            r.best.signature(),
            Partition::p_nul(10).unwrap().signature()
        );
        assert!(matches!(
            exhaustive_search(&t.language, 13, 2, &Objective::Contextual { gamma: 0.1 }, B),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn annotation_partitions_on_toy() {
        let t = toy();
        let pos = position_partition(&t.language, 10).unwrap();
        assert_eq!(pos.num_categories(), 3);
        let c = t.vocab.id("c").unwrap();
        assert_eq!(pos.membership(c), &[(0, 0.5), (2, 0.5)]);
        let seq = sequence_partition(&t.language, 10).unwrap();
        assert_eq!(seq.num_categories(), 4);
        assert_eq!(seq.membership(c).len(), 2);
        let e = t.vocab.id("e").unwrap();
        assert_eq!(seq.membership(e).len(), 1);
        assert!(position_partition(&t.language, 5).is_err());
    }

    #[test]
    fn split_experiment_rejects_bad_pairs() {
        let t = toy();
        let opts = SplitOptions::default();
        assert!(split_experiment(&t.language, &t.p2, &t.p1, (0, 0), &opts).is_err());
        assert!(split_experiment(&t.language, &t.p2, &t.p1, (0, 9), &opts).is_err());
    }
}
