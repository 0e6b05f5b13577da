//! Entropy-based measures of how much a partition says about a language.
//!
//! For a partition `P` and a language `L` of length-`n` sequences:
//!
//! * `I_L(P) = H(π(L̿)) - H(π(L))`, the entropy removed by knowing the real
//!   category sequences rather than positionwise independent draws;
//! * `I_L̄(P)`, the same quantity on the shuffled language, which only keeps
//!   the co-occurrence part of that information;
//! * `I_L(P;P') = H(π(L)) + H(π'(L)) - H((π·π')(L))`, the information two
//!   partitions share.
//!
//! A partition is contextual when `I_L(P) = I_L̄(P)` and syntactic when it
//! shares nothing with any contextual partition. The relaxed selection
//! rules [`gamma_preference`] and [`mu_preference`] compare two candidate
//! partitions under those criteria, and [`model_information`] swaps entropy
//! for the best cross-entropy reachable inside a model class.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{CategoryLanguage, Language, StochasticLanguage};
use crate::partition::Partition;

/// Slack allowed when checking entropy orderings and clamping MI.
pub const INFO_TOLERANCE: f64 = 1e-9;
/// Increments at or below this size count as zero in the selection rules,
/// and ratios within it of the threshold count as on the boundary.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "10")]
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
            LogBase::Ten => x.log10(),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
            LogBase::Ten => "10",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            "10" => Ok(LogBase::Ten),
            other => Err(Error::validation(format!(
                "log base must be 2, e or 10, got {other:?}"
            ))),
        }
    }
}

/// `-Σ p log p` over the given masses, with `0 log 0 = 0`.
pub fn entropy_of<I: IntoIterator<Item = f64>>(probs: I, base: LogBase) -> f64 {
    let h = -probs
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| p * base.log(p))
        .sum::<f64>();
    // avoid reporting -0.0
    h + 0.0
}

pub fn entropy<K>(language: &Language<K>, base: LogBase) -> f64 {
    entropy_of(language.iter().map(|(_, p)| p), base)
}

/// Entropy of the projected unigram-product language, `n · H(q)`.
pub fn product_entropy(
    language: &StochasticLanguage,
    partition: &Partition,
    base: LogBase,
) -> Result<f64> {
    let q = language.unigram_product().category_marginal(partition)?;
    Ok(language.n() as f64 * entropy_of(q, base))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoReport {
    pub log_base: LogBase,
    /// `H(π(L))`
    pub h_language: f64,
    /// `H(π(L̄))`
    pub h_shuffled: f64,
    /// `H(π(L̿))`
    pub h_unigram: f64,
    /// `I_L(P)`
    pub information: f64,
    /// `I_L̄(P)`
    pub information_shuffled: f64,
    /// `I_L(P) - I_L̄(P)`; zero for contextual partitions.
    pub contextuality_gap: f64,
}

impl InfoReport {
    fn from_entropies(log_base: LogBase, h_language: f64, h_shuffled: f64, h_unigram: f64) -> Self {
        let information = h_unigram - h_language;
        let information_shuffled = h_unigram - h_shuffled;
        InfoReport {
            log_base,
            h_language,
            h_shuffled,
            h_unigram,
            information,
            information_shuffled,
            contextuality_gap: information - information_shuffled,
        }
    }

    /// `(I_L - I_L̄) / I_L`, the smallest γ at which the partition is
    /// preferred over `p_nul`. Zero when the partition carries nothing.
    pub fn gamma_threshold(&self) -> f64 {
        if self.information <= DEGENERATE_TOLERANCE {
            0.0
        } else {
            self.contextuality_gap / self.information
        }
    }

    fn check_ordering(&self) -> Result<()> {
        let slack = |h: f64| INFO_TOLERANCE * h.abs().max(1.0);
        if self.h_unigram + slack(self.h_unigram) < self.h_shuffled
            || self.h_shuffled + slack(self.h_shuffled) < self.h_language
        {
            return Err(Error::Internal(format!(
                "entropy ordering violated: H(unigram)={} H(shuffled)={} H(language)={}",
                self.h_unigram, self.h_shuffled, self.h_language
            )));
        }
        Ok(())
    }
}

/// Information carried by `partition` about `language`.
pub fn information(
    language: &StochasticLanguage,
    partition: &Partition,
    base: LogBase,
) -> Result<InfoReport> {
    let projected = language.project(partition)?;
    let report = InfoReport::from_entropies(
        base,
        entropy(&projected, base),
        entropy(&projected.shuffle(), base),
        product_entropy(language, partition, base)?,
    );
    report.check_ordering()?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MIReport {
    pub log_base: LogBase,
    /// `H(π(L))`
    pub h_first: f64,
    /// `H(π'(L))`
    pub h_second: f64,
    /// `H((π·π')(L))`
    pub h_joint: f64,
    pub mutual_information: f64,
}

impl MIReport {
    fn from_entropies(
        log_base: LogBase,
        h_first: f64,
        h_second: f64,
        h_joint: f64,
    ) -> Result<Self> {
        let mut mi = h_first + h_second - h_joint;
        if mi < 0.0 {
            if mi < -INFO_TOLERANCE {
                return Err(Error::Internal(format!("negative mutual information {mi}")));
            }
            mi = 0.0;
        }
        Ok(MIReport {
            log_base,
            h_first,
            h_second,
            h_joint,
            mutual_information: mi,
        })
    }
}

/// Mutual information of two partitions with respect to `language`.
pub fn mutual_information(
    language: &StochasticLanguage,
    first: &Partition,
    second: &Partition,
    base: LogBase,
) -> Result<MIReport> {
    let joint = first.product(second)?;
    MIReport::from_entropies(
        base,
        entropy(&language.project(first)?, base),
        entropy(&language.project(second)?, base),
        entropy(&language.project(&joint)?, base),
    )
}

/// Outcome of comparing the current partition with a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    KeepCurrent,
    PreferCandidate,
}

fn information_gain(
    language: &StochasticLanguage,
    current: &Partition,
    candidate: &Partition,
    base: LogBase,
) -> Result<(f64, f64)> {
    let a = information(language, current, base)?;
    let b = information(language, candidate, base)?;
    let delta = b.information - a.information;
    if delta < -INFO_TOLERANCE {
        return Err(Error::validation(format!(
            "candidate carries less information than the current partition \
             (ΔI = {delta}); swap the arguments"
        )));
    }
    Ok((
        delta.max(0.0),
        b.information_shuffled - a.information_shuffled,
    ))
}

/// `(ΔI(L) - ΔI(L̄)) / ΔI(L)` for a candidate refining `current`; zero when
/// no information is gained.
pub fn gamma_ratio(
    language: &StochasticLanguage,
    current: &Partition,
    candidate: &Partition,
    base: LogBase,
) -> Result<f64> {
    let (delta, delta_shuffled) = information_gain(language, current, candidate, base)?;
    Ok(if delta <= DEGENERATE_TOLERANCE {
        0.0
    } else {
        (delta - delta_shuffled) / delta
    })
}

/// The γ-contextual rule: take the candidate iff its extra information is
/// order-free up to a fraction `gamma`.
pub fn gamma_preference(
    language: &StochasticLanguage,
    current: &Partition,
    candidate: &Partition,
    gamma: f64,
    base: LogBase,
) -> Result<Preference> {
    let ratio = gamma_ratio(language, current, candidate, base)?;
    Ok(if ratio <= gamma + DEGENERATE_TOLERANCE {
        Preference::PreferCandidate
    } else {
        Preference::KeepCurrent
    })
}

/// `ΔMI / ΔI` for a candidate refining `current`, measured against the
/// contextual reference. `None` when `ΔI = 0`.
pub fn mu_ratio(
    language: &StochasticLanguage,
    current: &Partition,
    candidate: &Partition,
    reference: &Partition,
    base: LogBase,
) -> Result<(f64, f64, Option<f64>)> {
    let (delta, _) = information_gain(language, current, candidate, base)?;
    let delta_mi = mutual_information(language, candidate, reference, base)?.mutual_information
        - mutual_information(language, current, reference, base)?.mutual_information;
    let ratio = (delta > DEGENERATE_TOLERANCE).then(|| delta_mi / delta);
    Ok((delta, delta_mi, ratio))
}

/// The μ-syntactic rule: take the candidate iff the contextual information
/// it adds is at most `mu` times the information it adds.
pub fn mu_preference(
    language: &StochasticLanguage,
    current: &Partition,
    candidate: &Partition,
    reference: &Partition,
    mu: f64,
    base: LogBase,
) -> Result<Preference> {
    let (_, delta_mi, ratio) = mu_ratio(language, current, candidate, reference, base)?;
    let accept = match ratio {
        Some(r) => r <= mu + DEGENERATE_TOLERANCE,
        None => delta_mi <= DEGENERATE_TOLERANCE,
    };
    Ok(if accept {
        Preference::PreferCandidate
    } else {
        Preference::KeepCurrent
    })
}

/// A family of models over category sequences. `cross_entropy` is the
/// smallest expected per-sequence negative log-likelihood the family can
/// reach on a sample, i.e. `-sup_M LL(M)`.
pub trait ModelClass {
    fn name(&self) -> &str;

    fn cross_entropy(&self, sample: &CategoryLanguage, base: LogBase) -> f64;

    /// Cross-entropy on the i.i.d. language of length `n` whose positions
    /// all follow `unigram` (indexed by category id).
    fn product_cross_entropy(&self, unigram: &[f64], n: usize, base: LogBase) -> f64;
}

/// Every distribution over category sequences; attains the entropy.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unrestricted;

impl ModelClass for Unrestricted {
    fn name(&self) -> &str {
        "unrestricted"
    }

    fn cross_entropy(&self, sample: &CategoryLanguage, base: LogBase) -> f64 {
        entropy(sample, base)
    }

    fn product_cross_entropy(&self, unigram: &[f64], n: usize, base: LogBase) -> f64 {
        n as f64 * entropy_of(unigram.iter().copied(), base)
    }
}

/// Time-homogeneous first-order Markov chains with an initial distribution,
/// fit by maximum likelihood.
#[derive(Debug, Clone, Copy, Default)]
pub struct MarkovBigram;

impl MarkovBigram {
    /// Cross-entropy of the MLE chain given expected initial and transition
    /// counts; equals `H(X_1) + Σ_ab N(a,b) (-log T(b|a))`.
    fn fitted_cross_entropy(
        initial: &BTreeMap<u32, f64>,
        pairs: &BTreeMap<(u32, u32), f64>,
        base: LogBase,
    ) -> f64 {
        let mut out_mass: HashMap<u32, f64> = HashMap::new();
        for (&(a, _), &w) in pairs {
            *out_mass.entry(a).or_insert(0.0) += w;
        }
        let transitions: f64 = pairs
            .iter()
            .filter(|(_, &w)| w > 0.0)
            .map(|(&(a, _), &w)| -w * base.log(w / out_mass[&a]))
            .sum();
        entropy_of(initial.values().copied(), base) + transitions
    }
}

impl ModelClass for MarkovBigram {
    fn name(&self) -> &str {
        "markov-bigram"
    }

    fn cross_entropy(&self, sample: &CategoryLanguage, base: LogBase) -> f64 {
        let initial = sample.position_marginal(0);
        let mut pairs = BTreeMap::new();
        for (seq, p) in sample.iter() {
            for w in seq.windows(2) {
                *pairs.entry((w[0], w[1])).or_insert(0.0) += p;
            }
        }
        Self::fitted_cross_entropy(&initial, &pairs, base)
    }

    fn product_cross_entropy(&self, unigram: &[f64], n: usize, base: LogBase) -> f64 {
        let support: Vec<(u32, f64)> = unigram
            .iter()
            .enumerate()
            .filter(|(_, &q)| q > 0.0)
            .map(|(c, &q)| (c as u32, q))
            .collect();
        let initial = support.iter().copied().collect();
        let steps = n.saturating_sub(1) as f64;
        let mut pairs = BTreeMap::new();
        for &(a, qa) in &support {
            for &(b, qb) in &support {
                pairs.insert((a, b), steps * qa * qb);
            }
        }
        Self::fitted_cross_entropy(&initial, &pairs, base)
    }
}

/// [`InfoReport`] with entropies replaced by a model class's minimized
/// cross-entropies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelInfoReport {
    pub model: String,
    #[serde(flatten)]
    pub report: InfoReport,
}

pub fn model_information(
    language: &StochasticLanguage,
    partition: &Partition,
    class: &dyn ModelClass,
    base: LogBase,
) -> Result<ModelInfoReport> {
    let projected = language.project(partition)?;
    let q = language.unigram_product().category_marginal(partition)?;
    let report = InfoReport::from_entropies(
        base,
        class.cross_entropy(&projected, base),
        class.cross_entropy(&projected.shuffle(), base),
        class.product_cross_entropy(&q, language.n(), base),
    );
    Ok(ModelInfoReport {
        model: class.name().to_owned(),
        report,
    })
}

/// Mutual information with entropies replaced by model cross-entropies.
/// Unlike the exact measure this can be negative for restricted classes,
/// so it is not clamped.
pub fn model_mutual_information(
    language: &StochasticLanguage,
    first: &Partition,
    second: &Partition,
    class: &dyn ModelClass,
    base: LogBase,
) -> Result<MIReport> {
    let joint = first.product(second)?;
    let h_first = class.cross_entropy(&language.project(first)?, base);
    let h_second = class.cross_entropy(&language.project(second)?, base);
    let h_joint = class.cross_entropy(&language.project(&joint)?, base);
    Ok(MIReport {
        log_base: base,
        h_first,
        h_second,
        h_joint,
        mutual_information: h_first + h_second - h_joint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::toy;
    use approx::assert_abs_diff_eq;

    const B: LogBase = LogBase::Two;

    #[test]
    fn entropy_examples() {
        let t = toy();
        assert_abs_diff_eq!(entropy(&t.language.project(&t.p2).unwrap(), B), 0.0);
        assert_abs_diff_eq!(
            entropy(&t.language.project(&t.p1).unwrap(), B),
            1.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(entropy(&t.language, B), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(entropy(&t.language, LogBase::E), 4f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            entropy(&t.language, LogBase::Ten),
            4f64.log10(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn log_base_parses() {
        assert_eq!("e".parse::<LogBase>().unwrap(), LogBase::E);
        assert!("3".parse::<LogBase>().is_err());
        assert_eq!(LogBase::Ten.to_string(), "10");
    }

    #[test]
    fn information_of_p_nul_is_zero() {
        let t = toy();
        let r = information(&t.language, &Partition::p_nul(10).unwrap(), B).unwrap();
        assert_abs_diff_eq!(r.information, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.gamma_threshold(), 0.0);
    }

    #[test]
    fn mi_of_p_nul_is_zero() {
        let t = toy();
        let r = mutual_information(&t.language, &Partition::p_nul(10).unwrap(), &t.p3, B).unwrap();
        assert_abs_diff_eq!(r.mutual_information, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn gamma_rule_on_toy() {
        let t = toy();
        let nul = Partition::p_nul(10).unwrap();
        assert_eq!(
            gamma_preference(&t.language, &nul, &t.p1, 0.0, B).unwrap(),
            Preference::PreferCandidate
        );
        let ratio = gamma_ratio(&t.language, &nul, &t.p2, B).unwrap();
        assert_abs_diff_eq!(
            ratio,
            1.0 - (2.0 * 3f64.log2() - 2.0) / (3.0 * 3f64.log2() - 2.0),
            epsilon = 1e-12
        );
        assert_eq!(
            gamma_preference(&t.language, &nul, &t.p2, 0.5, B).unwrap(),
            Preference::KeepCurrent
        );
        // identical partitions: nothing gained, accept
        assert_eq!(
            gamma_preference(&t.language, &t.p2, &t.p2, 0.0, B).unwrap(),
            Preference::PreferCandidate
        );
        // reversed arguments
        assert!(matches!(
            gamma_preference(&t.language, &t.p1, &nul, 0.5, B),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn mu_rule_on_toy() {
        let t = toy();
        let nul = Partition::p_nul(10).unwrap();
        assert_eq!(
            mu_preference(&t.language, &nul, &t.p2, &t.p1, 0.0, B).unwrap(),
            Preference::PreferCandidate
        );
        let (delta, delta_mi, ratio) = mu_ratio(&t.language, &t.p2, &t.p3, &t.p1, B).unwrap();
        assert_abs_diff_eq!(delta, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(delta_mi, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ratio.unwrap(), 0.5, epsilon = 1e-9);
        assert_eq!(
            mu_preference(&t.language, &t.p2, &t.p3, &t.p1, 0.49, B).unwrap(),
            Preference::KeepCurrent
        );
        assert_eq!(
            mu_preference(&t.language, &t.p2, &t.p3, &t.p1, 0.5, B).unwrap(),
            Preference::PreferCandidate
        );
        assert!(mu_preference(&t.language, &t.p3, &t.p2, &t.p1, 0.5, B).is_err());
    }

    #[test]
    fn mu_rule_degenerate_gain() {
        let t = toy();
        // same partition: ΔI = 0 and ΔMI = 0, accept
        assert_eq!(
            mu_preference(&t.language, &t.p3, &t.p3, &t.p1, 0.0, B).unwrap(),
            Preference::PreferCandidate
        );
    }

    #[test]
    fn markov_bigram_cross_entropies() {
        let t = toy();
        let p3 = t.language.project(&t.p3).unwrap();
        assert_abs_diff_eq!(entropy(&p3, B), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(MarkovBigram.cross_entropy(&p3, B), 2.0, epsilon = 1e-12);
        let p1 = t.language.project(&t.p1).unwrap();
        assert_abs_diff_eq!(MarkovBigram.cross_entropy(&p1, B), 1.5, epsilon = 1e-12);
        let q = [0.5, 0.25, 0.25];
        assert_abs_diff_eq!(
            MarkovBigram.product_cross_entropy(&q, 3, B),
            Unrestricted.product_cross_entropy(&q, 3, B),
            epsilon = 1e-12
        );
    }

    #[test]
    fn unrestricted_model_matches_exact_information() {
        let t = toy();
        for p in [&t.p1, &t.p2, &t.p3] {
            let exact = information(&t.language, p, B).unwrap();
            let model = model_information(&t.language, p, &Unrestricted, B).unwrap();
            assert_eq!(model.report, exact);
        }
    }
}
