//! Ingestion and preprocessing of per-proposition truth-set approximations.
//!
//! A [`Trace`] maps each atomic proposition to a pair of interval queues whose
//! unions bound the proposition's truth set from below and above. An
//! [`ExactTrace`] is the special case where the two coincide and is the input
//! the brute-force oracle evaluates.
//!
//! Trace files are JSON documents:
//!
//! ```json
//! {
//!   "horizon": "7/2",
//!   "propositions": {
//!     "g1": {"under": "{[0,1)}", "over": "{[0,1]}"},
//!     "g2": {"exact": "{[2,3]}"}
//!   }
//! }
//! ```
//!
//! Queue literals use the queue text syntax with bit-exact rationals. Queues
//! that are merely unmerged are normalized on load; an under-approximation
//! escaping its over-approximation is a hard error. A declared horizon `b` is
//! enforced on load: `(b,inf)` is added to every over-approximation and
//! removed from every under-approximation, so no proposition claims knowledge
//! beyond the horizon.

use std::collections::BTreeMap;
use std::io::Read;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Approximation;
use crate::interval::Interval;
use crate::parse::{parse_queue, parse_rational, ParseError};
use crate::queue::IntervalQueue;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("malformed trace document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("proposition {proposition}: {source}")]
    Queue {
        proposition: String,
        source: ParseError,
    },
    #[error("horizon: {0}")]
    Horizon(ParseError),
    #[error("proposition {proposition}: under-approximation is not contained in the over-approximation")]
    UnderNotContained { proposition: String },
    #[error("reading trace: {0}")]
    Io(#[from] std::io::Error),
}

/// Per-proposition under/over approximations, plus an optional information
/// horizon.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trace {
    propositions: BTreeMap<String, Approximation>,
    horizon: Option<BigRational>,
}

/// Per-proposition exact truth sets: the case where under equals over.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactTrace {
    propositions: BTreeMap<String, IntervalQueue>,
}

#[derive(Serialize, Deserialize)]
struct TraceDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<String>,
    propositions: BTreeMap<String, PropDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PropDoc {
    Exact { exact: String },
    Bounds { under: String, over: String },
}

impl Trace {
    /// Builds a trace from proposition bounds, validating containment.
    pub fn from_bounds(
        propositions: impl IntoIterator<Item = (String, IntervalQueue, IntervalQueue)>,
    ) -> Result<Trace, TraceError> {
        let mut map = BTreeMap::new();
        for (name, under, over) in propositions {
            if !under.is_subset_of(&over) {
                return Err(TraceError::UnderNotContained { proposition: name });
            }
            map.insert(name, Approximation { under, over });
        }
        Ok(Trace { propositions: map, horizon: None })
    }

    /// Reads and validates a JSON trace document. A declared horizon is
    /// applied before the trace is returned.
    pub fn load(reader: impl Read) -> Result<Trace, TraceError> {
        let doc: TraceDoc = serde_json::from_reader(reader)?;
        Trace::from_doc(doc)
    }

    pub fn parse(text: &str) -> Result<Trace, TraceError> {
        let doc: TraceDoc = serde_json::from_str(text)?;
        Trace::from_doc(doc)
    }

    fn from_doc(doc: TraceDoc) -> Result<Trace, TraceError> {
        let mut trace = Trace::from_bounds(doc.propositions.into_iter().map(|(name, prop)| {
            let parsed = match prop {
                PropDoc::Exact { exact } => {
                    parse_queue(&exact).map(|q| (q.clone(), q))
                }
                PropDoc::Bounds { under, over } => parse_queue(&under)
                    .and_then(|u| parse_queue(&over).map(|o| (u, o))),
            };
            (name, parsed)
        })
        .map(|(name, parsed)| match parsed {
            Ok((under, over)) => Ok((name, under, over)),
            Err(source) => Err(TraceError::Queue { proposition: name, source }),
        })
        .collect::<Result<Vec<_>, _>>()?)?;

        if let Some(text) = doc.horizon {
            let b = parse_rational(&text).map_err(TraceError::Horizon)?;
            trace = trace.apply_horizon(&b);
        }
        Ok(trace)
    }

    /// Serializes back to the JSON document form; loading the output yields
    /// an equal trace. Propositions with coinciding bounds are written in the
    /// `exact` form.
    pub fn to_json_string(&self) -> String {
        let doc = TraceDoc {
            horizon: self.horizon.as_ref().map(|b| b.to_string()),
            propositions: self
                .propositions
                .iter()
                .map(|(name, approx)| {
                    let prop = if approx.under == approx.over {
                        PropDoc::Exact { exact: approx.under.to_string() }
                    } else {
                        PropDoc::Bounds {
                            under: approx.under.to_string(),
                            over: approx.over.to_string(),
                        }
                    };
                    (name.clone(), prop)
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("trace document serializes")
    }

    /// Declares that nothing is known after time `b`: `(b,inf)` joins every
    /// over-approximation and leaves every under-approximation. The recorded
    /// horizon becomes the minimum of `b` and any previous horizon.
    pub fn apply_horizon(&self, b: &BigRational) -> Trace {
        let tail = IntervalQueue::singleton(Interval::open_unbounded(b.clone()));
        let propositions = self
            .propositions
            .iter()
            .map(|(name, approx)| {
                let under = approx.under.difference(&tail);
                let over = IntervalQueue::construct(
                    approx.over.iter().chain(tail.iter()).cloned(),
                );
                (name.clone(), Approximation { under, over })
            })
            .collect();
        let horizon = match &self.horizon {
            Some(existing) => Some(existing.min(b).clone()),
            None => Some(b.clone()),
        };
        Trace { propositions, horizon }
    }

    /// Exactly the propositions whose bounds coincide; `None` if any gap is
    /// non-empty.
    pub fn as_exact(&self) -> Option<ExactTrace> {
        let mut propositions = BTreeMap::new();
        for (name, approx) in &self.propositions {
            if approx.under != approx.over {
                return None;
            }
            propositions.insert(name.clone(), approx.under.clone());
        }
        Some(ExactTrace { propositions })
    }

    pub fn horizon(&self) -> Option<&BigRational> {
        self.horizon.as_ref()
    }

    pub fn approximation(&self, name: &str) -> Option<&Approximation> {
        self.propositions.get(name)
    }

    pub fn propositions(&self) -> impl Iterator<Item = (&String, &Approximation)> {
        self.propositions.iter()
    }

    pub fn len(&self) -> usize {
        self.propositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.propositions.is_empty()
    }
}

impl ExactTrace {
    pub fn from_queues(
        propositions: impl IntoIterator<Item = (String, IntervalQueue)>,
    ) -> ExactTrace {
        ExactTrace { propositions: propositions.into_iter().collect() }
    }

    pub fn queue(&self, name: &str) -> Option<&IntervalQueue> {
        self.propositions.get(name)
    }

    pub fn propositions(&self) -> impl Iterator<Item = (&String, &IntervalQueue)> {
        self.propositions.iter()
    }

    /// The trivial embedding: under = over = the exact queue.
    pub fn to_trace(&self) -> Trace {
        Trace {
            propositions: self
                .propositions
                .iter()
                .map(|(name, q)| {
                    (name.clone(), Approximation { under: q.clone(), over: q.clone() })
                })
                .collect(),
            horizon: None,
        }
    }

    /// The interior/closure relaxation: the under-approximation of each
    /// proposition is the interiors of its items, the over-approximation
    /// their closures. The two differ only at endpoints, so every initial
    /// gap has measure zero.
    pub fn approximate(&self) -> Trace {
        Trace {
            propositions: self
                .propositions
                .iter()
                .map(|(name, q)| {
                    let under =
                        IntervalQueue::construct(q.iter().filter_map(Interval::interior));
                    let over = IntervalQueue::construct(q.iter().map(Interval::closure));
                    (name.clone(), Approximation { under, over })
                })
                .collect(),
            horizon: None,
        }
    }
}
