use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::RngStream;
use crate::error::{check_probability, Error, Result};
use crate::model::ModelParams;

/// Which search environment produced a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskKind {
    /// Abstract urn task: tests pass with probability `1 - p_minus` on the
    /// best hypotheses and never elsewhere.
    Urn,
    /// Best-fit string search with single-character partial tests.
    String,
}

impl TaskKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TaskKind::Urn => "urn",
            TaskKind::String => "string",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "urn" => Ok(TaskKind::Urn),
            "string" => Ok(TaskKind::String),
            other => Err(Error::InvalidTask(format!("unknown task kind `{other}`"))),
        }
    }
}

/// Search environment an agent population explores.
///
/// Hypotheses are indices in `0..hypothesis_count()`. A partial test of a
/// hypothesis consumes randomness from the shared stream.
pub trait SearchTask {
    fn kind(&self) -> TaskKind;

    fn hypothesis_count(&self) -> usize;

    fn is_best(&self, hypothesis: usize) -> bool;

    fn best_count(&self) -> usize;

    /// Probability that a best hypothesis fails a partial test.
    fn false_negative(&self) -> f64;

    fn micro_test(&self, hypothesis: usize, rng: &mut RngStream) -> bool;

    /// Probability that a uniform resample lands in the best set.
    fn hit_probability(&self) -> f64 {
        self.best_count() as f64 / self.hypothesis_count() as f64
    }

    fn model_params(&self, n_agents: usize) -> Result<ModelParams> {
        ModelParams::new(n_agents, self.false_negative(), self.hit_probability())
    }
}

/// Hypothesis space used when `1 / p_m` is not an integer.
const FINE_HYPOTHESIS_COUNT: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct BernoulliTask {
    p_minus: f64,
    best: Vec<bool>,
    best_count: usize,
}

impl BernoulliTask {
    pub fn new(p_minus: f64, hypothesis_count: usize, best_set: &[usize]) -> Result<Self> {
        check_probability("p_minus", p_minus)?;
        if hypothesis_count == 0 {
            return Err(Error::InvalidTask("empty hypothesis space".into()));
        }
        let mut best = vec![false; hypothesis_count];
        for &h in best_set {
            if h >= hypothesis_count {
                return Err(Error::InvalidTask(format!(
                    "best hypothesis {h} outside 0..{hypothesis_count}"
                )));
            }
            best[h] = true;
        }
        let best_count = best.iter().filter(|&&b| b).count();
        if best_count == 0 {
            return Err(Error::InvalidTask("best set is empty".into()));
        }
        Ok(Self {
            p_minus,
            best,
            best_count,
        })
    }

    /// Urn task realizing `(p_minus, p_m)`. The best set is the first
    /// `p_m * H` hypotheses, with `H = 1 / p_m` when that is an integer.
    pub fn from_params(params: &ModelParams) -> Result<Self> {
        let p_m = params.p_m();
        if p_m == 0.0 {
            return Err(Error::InvalidTask("p_m must be positive".into()));
        }
        let inverse = 1.0 / p_m;
        let (h, k) = if (inverse - inverse.round()).abs() < 1e-9 {
            (inverse.round() as usize, 1)
        } else {
            let k = (p_m * FINE_HYPOTHESIS_COUNT as f64).round() as usize;
            (FINE_HYPOTHESIS_COUNT, k.max(1))
        };
        let best: Vec<usize> = (0..k).collect();
        Self::new(params.p_minus(), h, &best)
    }
}

impl SearchTask for BernoulliTask {
    fn kind(&self) -> TaskKind {
        TaskKind::Urn
    }

    fn hypothesis_count(&self) -> usize {
        self.best.len()
    }

    fn is_best(&self, hypothesis: usize) -> bool {
        self.best[hypothesis]
    }

    fn best_count(&self) -> usize {
        self.best_count
    }

    fn false_negative(&self) -> f64 {
        self.p_minus
    }

    fn micro_test(&self, hypothesis: usize, rng: &mut RngStream) -> bool {
        // One draw per test on every hypothesis keeps the stream aligned.
        let u: f64 = rng.gen();
        self.best[hypothesis] && u < 1.0 - self.p_minus
    }
}

/// Locate a template in a text; hypothesis `h` is the alignment of the
/// template at text position `h`.
#[derive(Debug, Clone)]
pub struct StringTask {
    text: Vec<u32>,
    template: Vec<u32>,
    best_position: usize,
    match_count: usize,
}

impl StringTask {
    /// Scans every alignment and accepts the pair only if exactly one
    /// position matches at least one character and all others match none.
    pub fn from_parts(text: Vec<u32>, template: Vec<u32>) -> Result<Self> {
        let l = template.len();
        if l == 0 {
            return Err(Error::InvalidTask("empty template".into()));
        }
        if text.len() < l {
            return Err(Error::InvalidTask("text shorter than template".into()));
        }
        let positions = text.len() - l + 1;
        let mut best = None;
        for pos in 0..positions {
            let matches = count_matches(&text[pos..pos + l], &template);
            if matches > 0 {
                if best.is_some() {
                    return Err(Error::InvalidTask(format!(
                        "position {pos} also matches the template"
                    )));
                }
                best = Some((pos, matches));
            }
        }
        let (best_position, match_count) =
            best.ok_or_else(|| Error::InvalidTask("no position matches the template".into()))?;
        Ok(Self {
            text,
            template,
            best_position,
            match_count,
        })
    }

    pub fn text(&self) -> &[u32] {
        &self.text
    }

    pub fn template(&self) -> &[u32] {
        &self.template
    }

    pub fn template_len(&self) -> usize {
        self.template.len()
    }

    pub fn best_position(&self) -> usize {
        self.best_position
    }

    pub fn match_count(&self) -> usize {
        self.match_count
    }

    /// Number of template characters matching at `position`.
    pub fn matches_at(&self, position: usize) -> usize {
        let l = self.template.len();
        count_matches(&self.text[position..position + l], &self.template)
    }
}

fn count_matches(window: &[u32], template: &[u32]) -> usize {
    window.iter().zip(template).filter(|(a, b)| a == b).count()
}

impl SearchTask for StringTask {
    fn kind(&self) -> TaskKind {
        TaskKind::String
    }

    fn hypothesis_count(&self) -> usize {
        self.text.len() - self.template.len() + 1
    }

    fn is_best(&self, hypothesis: usize) -> bool {
        hypothesis == self.best_position
    }

    fn best_count(&self) -> usize {
        1
    }

    fn false_negative(&self) -> f64 {
        1.0 - self.match_count as f64 / self.template.len() as f64
    }

    fn micro_test(&self, hypothesis: usize, rng: &mut RngStream) -> bool {
        let offset = rng.gen_range(0..self.template.len());
        self.text[hypothesis + offset] == self.template[offset]
    }
}

/// Symbol filling the text outside the embedded partial match.
pub const FILLER: u32 = 0;

/// Builds a text of `hypothesis_count + template_len - 1` symbols holding a
/// single partial copy of a template of distinct symbols.
///
/// `k = round(L (1 - p_minus_target))` of the template's leading characters
/// are embedded at the middle position; the achieved false-negative rate is
/// `1 - k / L`.
pub fn make_string_task(
    p_minus_target: f64,
    template_len: usize,
    hypothesis_count: usize,
) -> Result<StringTask> {
    check_probability("p_minus", p_minus_target)?;
    if template_len == 0 || hypothesis_count == 0 {
        return Err(Error::InvalidTask(
            "template length and hypothesis count must be positive".into(),
        ));
    }
    let k = (template_len as f64 * (1.0 - p_minus_target)).round() as usize;
    if k == 0 {
        return Err(Error::InvalidTask(format!(
            "p_minus = {p_minus_target} with template length {template_len} leaves no matching character"
        )));
    }
    let template: Vec<u32> = (1..=template_len as u32).collect();
    let mut text = vec![FILLER; hypothesis_count + template_len - 1];
    let best_position = hypothesis_count / 2;
    text[best_position..best_position + k].copy_from_slice(&template[..k]);
    StringTask::from_parts(text, template)
}
