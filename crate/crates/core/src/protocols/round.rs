//! Shared sampling of detector events and Eve's probe measurement.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::Rng;

use super::optics::{event_distribution, probe_given_event};
use super::types::{DetectorEvent, PartyAction, ProtocolId, SignalState};
use crate::attacks::{measure_populations, GuessRule, LegPlan, ProbeOutcome};
use crate::error::Result;
use crate::PureState;

/// Every intermediate state of one coherent round.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub prepared: PureState,
    /// After Eve's onward hook (equal to `prepared` when Eve is passive).
    pub after_onward: PureState,
    /// After the parties' block/reflect actions.
    pub after_actions: PureState,
    /// After Eve's return hook.
    pub after_return: PureState,
    /// Output of the recombining beam splitter over `[Port, Polarization, Probe]`.
    pub detection: PureState,
}

impl Evolution {
    pub fn distribution(&self) -> Vec<(DetectorEvent, f64)> {
        event_distribution(&self.detection)
    }
}

pub(crate) fn sample_event<R: Rng + ?Sized>(
    dist: &[(DetectorEvent, f64)],
    rng: &mut R,
) -> DetectorEvent {
    let mut u: f64 = rng.random();
    for (event, p) in dist {
        if u < *p {
            return *event;
        }
        u -= p;
    }
    dist.iter()
        .rev()
        .find(|(_, p)| *p > 0.0)
        .map_or(DetectorEvent::None, |(e, _)| *e)
}

/// Everything that fixes the coherent evolution of a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct RoundKey {
    pub protocol: ProtocolId,
    pub signal: Option<SignalState>,
    pub alice: Option<PartyAction>,
    pub bob: PartyAction,
    pub plan: LegPlan,
    pub n: usize,
}

/// Event distribution and, per possible event, the probe populations.
struct Compiled {
    dist: Vec<(DetectorEvent, f64)>,
    probes: Vec<(DetectorEvent, Vec<f64>)>,
}

impl Compiled {
    fn new(evolution: &Evolution) -> Result<Self> {
        // Round-off leaves ~1e-30 weight on impossible events; drop it.
        let dist: Vec<(DetectorEvent, f64)> = evolution
            .distribution()
            .into_iter()
            .map(|(e, p)| (e, if p > 1e-15 { p } else { 0.0 }))
            .collect();
        let probes = dist
            .iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(e, _)| Ok((*e, probe_given_event(&evolution.detection, *e)?.populations())))
            .collect::<Result<_>>()?;
        Ok(Self { dist, probes })
    }
}

thread_local! {
    // A session only visits a handful of distinct evolutions.
    static COMPILED: RefCell<HashMap<RoundKey, Rc<Compiled>>> = RefCell::new(HashMap::new());
}

/// Samples the detector event, then Eve's probe outcome given that event.
/// The evolution is built once per thread and key.
pub(crate) fn sample_round<R: Rng + ?Sized>(
    key: RoundKey,
    build: impl FnOnce() -> Result<Evolution>,
    rule: Option<GuessRule>,
    rng: &mut R,
) -> Result<(DetectorEvent, Option<(ProbeOutcome, u8)>)> {
    let cached = COMPILED.with(|c| c.borrow().get(&key).cloned());
    let compiled = match cached {
        Some(c) => c,
        None => {
            let c = Rc::new(Compiled::new(&build()?)?);
            COMPILED.with(|m| m.borrow_mut().insert(key, Rc::clone(&c)));
            c
        }
    };
    let event = sample_event(&compiled.dist, rng);
    let eve = match rule {
        Some(rule) => {
            let pops = compiled
                .probes
                .iter()
                .find(|(e, _)| *e == event)
                .map(|(_, p)| p.as_slice())
                .ok_or(crate::Error::ZeroProbabilityEvent)?;
            Some(measure_populations(pops, rule, rng)?)
        }
        None => None,
    };
    Ok((event, eve))
}
