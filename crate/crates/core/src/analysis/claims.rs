//! Reproduction of every published figure as a table of checked claims.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::bounds::{cascade_report, entropy_inverse, holevo_analysis, hybrid_analysis, hybrid_threshold};
use super::channel::{
    collision_probability, discrimination_report, guess_channel, guess_channel_record, key_rate,
    mutual_information,
};
use crate::attacks::{
    flip_onward, probe_conditional_states, residual_disturbance, Conditioning, EveStrategy,
    GuessRule, LegPlan, ProbeOutcome,
};
use crate::error::Result;
use crate::protocols::optics::{self, absorbed_as_vacuum, prob_of, E0, EH, EV, H, V, VAC};
use crate::protocols::{
    cascade_evolution, michelson_evolution, michelson_prepare, noh09_distribution,
    pingpong_message, run_records, scqkd_evolution, summarize, DetectorEvent, PartyAction,
    Polarization, ProtocolId, SessionConfig, SignalState, DEFAULT_SEED,
};
use crate::qcore::{join_index, Subsystem, SubsystemId};
use crate::{Complex, MixedState, ProbeEnsemble, PureState};

/// Where the reference value of a claim comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Published figure.
    Published,
    /// Closed-form consequence of published formulas.
    Derived,
    /// Computed only by this crate's state-vector model.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub provenance: Provenance,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Failing gating rows make `reproduce` fail; other rows are reported only.
    pub gating: bool,
    pub note: String,
}

/// Rounds per sampled session.
pub const SESSION_ROUNDS: u64 = 100_000;

struct Table(Vec<Claim>);

impl Table {
    fn push(&mut self, id: &str, prov: Provenance, expected: f64, computed: f64, tol: f64, note: &str) {
        self.0.push(Claim {
            id: id.into(),
            provenance: prov,
            expected,
            computed,
            tolerance: tol,
            pass: (computed - expected).abs() <= tol,
            gating: true,
            note: note.into(),
        });
    }

    fn published(&mut self, id: &str, expected: f64, computed: f64, tol: f64) {
        self.push(id, Provenance::Published, expected, computed, tol, "");
    }

    /// Computed value must exceed `floor`.
    fn positive(&mut self, id: &str, prov: Provenance, computed: f64, floor: f64, note: &str) {
        self.0.push(Claim {
            id: id.into(),
            provenance: prov,
            expected: floor,
            computed,
            tolerance: 0.0,
            pass: computed > floor,
            gating: true,
            note: note.into(),
        });
    }

    /// Computed value must lie in `[lo, hi]`; `expected` is the published figure.
    fn within(&mut self, id: &str, expected: f64, computed: f64, lo: f64, hi: f64, note: &str) {
        self.0.push(Claim {
            id: id.into(),
            provenance: Provenance::Published,
            expected,
            computed,
            tolerance: (hi - lo) / 2.0,
            pass: (lo..=hi).contains(&computed),
            gating: true,
            note: note.into(),
        });
    }

    fn informational(&mut self, id: &str, prov: Provenance, expected: f64, computed: f64, tol: f64, note: &str) {
        self.push(id, prov, expected, computed, tol, note);
        self.0.last_mut().expect("just pushed").gating = false;
    }
}

/// Max amplitude deviation of `state` from the (possibly unnormalised)
/// expansion `terms`.
pub fn amplitude_deviation(state: &PureState, terms: &[(Vec<usize>, f64)]) -> f64 {
    let subs = state.subsystems();
    let mut expected = vec![Complex::new(0.0, 0.0); state.dim()];
    for (levels, a) in terms {
        expected[join_index(subs, levels)] += Complex::new(*a, 0.0);
    }
    state
        .amplitudes()
        .iter()
        .zip(&expected)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn diag(sub: Subsystem, weights: &[f64]) -> Result<MixedState> {
    let mut w = weights.to_vec();
    w.resize(sub.dim, 0.0);
    MixedState::diagonal(sub, &w)
}

fn ensemble_deviation(ens: &ProbeEnsemble, w0: &[f64], w1: &[f64]) -> Result<f64> {
    let sub = ens.subsystems()[0];
    ens.max_abs_diff(&ProbeEnsemble::binary(diag(sub, w0)?, diag(sub, w1)?)?)
}

fn three_sigma(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n.max(1) as f64).sqrt()
}

/// Evaluates every claim with [`SESSION_ROUNDS`] rounds and the default seed.
pub fn reproduce_all() -> Result<Vec<Claim>> {
    reproduce_with(SESSION_ROUNDS, DEFAULT_SEED)
}

pub fn reproduce_with(rounds: u64, seed: u64) -> Result<Vec<Claim>> {
    let mut t = Table(Vec::new());
    encoding(&mut t)?;
    detection(&mut t)?;
    evolutions(&mut t)?;
    ensembles(&mut t)?;
    information(&mut t)?;
    holevo(&mut t)?;
    hybrid(&mut t)?;
    cascade(&mut t)?;
    two_way_and_four_state(&mut t)?;
    sessions(&mut t, rounds, seed)?;
    Ok(t.0)
}

fn encoding(t: &mut Table) -> Result<()> {
    let rho = |level| diag(optics::mode_a(), &[0.5, if level == H { 0.5 } else { 0.0 }, if level == V { 0.5 } else { 0.0 }]);
    let ens = ProbeEnsemble::binary(rho(H)?, rho(V)?)?;
    let d = discrimination_report(&ens)?;
    t.published("noh09.encoding.trace_distance", 0.5, d.distance, 1e-12);
    t.published("noh09.encoding.p_guess", 0.75, d.p_guess, 1e-12);
    t.published("noh09.encoding.e_prime", 0.25, d.error, 1e-12);
    Ok(())
}

fn detection(t: &mut Table) -> Result<()> {
    let none = EveStrategy::NoEve;
    let m = noh09_distribution(Polarization::H, PartyAction::RH, &none)?;
    t.published("noh09.detect.match_d2", 1.0, prob_of(&m, DetectorEvent::D2), 1e-12);
    let mm = noh09_distribution(Polarization::H, PartyAction::RV, &none)?;
    t.published("noh09.detect.mismatch_db", 0.5, prob_of(&mm, DetectorEvent::DB), 1e-12);
    t.published("noh09.detect.mismatch_d2", 0.25, prob_of(&mm, DetectorEvent::D2), 1e-12);
    t.published("noh09.detect.mismatch_d1", 0.25, prob_of(&mm, DetectorEvent::D1), 1e-12);

    let mut shift: f64 = 0.0;
    for j in [Polarization::H, Polarization::V] {
        for a in [PartyAction::RH, PartyAction::RV] {
            let clean = noh09_distribution(j, a, &none)?;
            let hit = noh09_distribution(j, a, &EveStrategy::Noiseless)?;
            for e in DetectorEvent::ALL {
                shift = shift.max((prob_of(&clean, e) - prob_of(&hit, e)).abs());
            }
        }
    }
    t.published("noh09.noiseless.distribution_shift", 0.0, shift, 1e-12);

    let sc = scqkd_evolution(PartyAction::Block, PartyAction::Reflect, false)?.distribution();
    t.published("scqkd.detect.dissimilar_d1", 0.25, prob_of(&sc, DetectorEvent::D1), 1e-12);
    Ok(())
}

fn evolutions(t: &mut Table) -> Result<()> {
    let s = FRAC_1_SQRT_2;
    let mut onward: f64 = 0.0;
    let mut matched: f64 = 0.0;
    let mut mismatched: f64 = 0.0;
    for j in [Polarization::H, Polarization::V] {
        let (l, e) = (j.level(), if j == Polarization::H { EH } else { EV });
        let ev = michelson_evolution(j.into(), j.reflecting_action(), LegPlan::Noiseless)?;
        onward = onward.max(amplitude_deviation(&ev.after_onward, &[(vec![VAC, l, e], s), (vec![l, VAC, E0], s)]));
        matched = matched.max(ev.after_return.max_abs_diff(&michelson_prepare(j.into())?)?);
        let ev = michelson_evolution(j.into(), j.flipped().reflecting_action(), LegPlan::Noiseless)?;
        mismatched = mismatched.max(amplitude_deviation(
            &absorbed_as_vacuum(&ev.after_return)?,
            &[(vec![VAC, VAC, e], s), (vec![l, VAC, E0], s)],
        ));
    }
    t.published("noh09.noiseless.onward_state", 0.0, onward, 1e-12);
    t.published("noh09.noiseless.return_match", 0.0, matched, 1e-12);
    t.published("noh09.noiseless.return_mismatch", 0.0, mismatched, 1e-12);

    let flipped = flip_onward(&michelson_prepare(SignalState::H)?)?;
    t.published(
        "noh09.noisyflip.flip_rule",
        0.0,
        amplitude_deviation(&flipped, &[(vec![VAC, V, EH], s), (vec![H, VAC, E0], s)]),
        1e-12,
    );

    let dist = residual_disturbance(ProtocolId::Noh09, &EveStrategy::Noiseless, Polarization::H)?;
    let sigma1 = diag(optics::mode_a(), &[0.5, 0.5])?;
    t.published("noh09.disturbance.sigma1", 0.0, dist.sigma1.max_abs_diff(&sigma1)?, 1e-12);
    t.push(
        "noh09.disturbance.distance",
        Provenance::Derived,
        0.5,
        dist.distance,
        1e-12,
        "distance between the attacked and unattacked Alice-side states",
    );
    Ok(())
}

fn ensembles(t: &mut Table) -> Result<()> {
    let blocked = Conditioning::BlockedBranch;
    let noh = probe_conditional_states(ProtocolId::Noh09, &EveStrategy::Noiseless, blocked, 1)?;
    t.published("noh09.ensemble.blocked_branch", 0.0, ensemble_deviation(&noh, &[0.5, 0.5], &[0.5, 0.0, 0.5])?, 1e-12);
    let sc = probe_conditional_states(ProtocolId::Scqkd, &EveStrategy::Noiseless, blocked, 1)?;
    t.published("scqkd.ensemble.blocked_branch", 0.0, ensemble_deviation(&sc, &[1.0], &[0.5, 0.5])?, 1e-12);
    let gs = probe_conditional_states(ProtocolId::Guoshi, &EveStrategy::GuoShiAttack, blocked, 1)?;
    t.published("guoshi.ensemble.matches_scqkd", 0.0, gs.max_abs_diff(&sc)?, 1e-12);

    let d1 = probe_conditional_states(ProtocolId::Noh09, &EveStrategy::Noiseless, Conditioning::D1Event, 1)?;
    t.informational(
        "noh09.ensemble.d1_event_distance",
        Provenance::Oracle,
        0.5,
        discrimination_report(&d1)?.distance,
        1e-12,
        "probe conditioned on the D1 click itself; the published ensemble is the blocked-branch one",
    );
    let sc_d1 = probe_conditional_states(ProtocolId::Scqkd, &EveStrategy::Noiseless, Conditioning::D1Event, 1)?;
    t.informational(
        "scqkd.ensemble.d1_event_distance",
        Provenance::Oracle,
        0.5,
        discrimination_report(&sc_d1)?.distance,
        1e-12,
        "probe conditioned on the D1 click itself",
    );

    for (name, ens) in [("noh09", &noh), ("scqkd", &sc)] {
        let d = discrimination_report(ens)?;
        t.published(&format!("{name}.ensemble.trace_distance"), 0.5, d.distance, 1e-12);
        t.published(&format!("{name}.ensemble.e_prime"), 0.25, d.error, 1e-12);
    }

    let z = |rule: GuessRule, o: ProbeOutcome| rule.z_distribution(o)[0];
    t.published("guess.ternary.tagged_h", 1.0, z(GuessRule::TernaryCoin, ProbeOutcome::EH), 0.0);
    t.published("guess.ternary.untagged_coin", 0.5, z(GuessRule::TernaryCoin, ProbeOutcome::E0), 0.0);
    t.published("guess.zero_default.untagged", 1.0, z(GuessRule::ZeroDefault, ProbeOutcome::E0), 0.0);
    Ok(())
}

fn information(t: &mut Table) -> Result<()> {
    let blocked = Conditioning::BlockedBranch;
    let noh = probe_conditional_states(ProtocolId::Noh09, &EveStrategy::Noiseless, blocked, 1)?;
    let ch = guess_channel(&noh, GuessRule::TernaryCoin)?;
    let post = |z: usize, x: usize| ch.posterior[z].as_ref().map_or(f64::NAN, |p| p[x]);
    t.published("noh09.channel.posterior_z0", 0.75, post(0, 0), 1e-12);
    t.published("noh09.channel.posterior_z1", 0.75, post(1, 1), 1e-12);
    t.published("noh09.mutual_information", 0.188722, mutual_information(&ch), 1e-6);
    let p_c = collision_probability(&ch)?;
    t.published("noh09.collision_probability", 0.625, p_c, 1e-12);
    t.published("noh09.key_rate", 0.678072, key_rate(p_c, 0.0)?, 1e-5);
    t.informational(
        "noh09.mutual_information_record",
        Provenance::Derived,
        0.5,
        mutual_information(&guess_channel_record(&noh)?),
        1e-12,
        "raw ternary outcome instead of the binarized guess",
    );

    let sc = probe_conditional_states(ProtocolId::Scqkd, &EveStrategy::Noiseless, blocked, 1)?;
    let ch = guess_channel(&sc, GuessRule::ZeroDefault)?;
    let post = |z: usize, x: usize| ch.posterior[z].as_ref().map_or(f64::NAN, |p| p[x]);
    t.published("scqkd.channel.posterior_z1", 1.0, post(1, 1), 1e-12);
    t.published("scqkd.channel.posterior_z0", 2.0 / 3.0, post(0, 0), 1e-12);
    t.published("scqkd.mutual_information", 0.311278, mutual_information(&ch), 1e-6);
    let p_c = collision_probability(&ch)?;
    t.published("scqkd.collision_probability", 2.0 / 3.0, p_c, 1e-12);
    t.published("scqkd.key_rate", 0.584963, key_rate(p_c, 0.0)?, 1e-5);
    Ok(())
}

fn holevo(t: &mut Table) -> Result<()> {
    let noh = probe_conditional_states(ProtocolId::Noh09, &EveStrategy::Noiseless, Conditioning::BlockedBranch, 1)?;
    let h = holevo_analysis(&noh)?;
    t.published("holevo.chi", 0.5, h.chi, 1e-9);
    t.published("holevo.e_chi", 0.110028, h.e_chi, 1e-4);
    t.published("holevo.collision_probability", 0.80416, h.p_c, 1e-3);
    t.published("holevo.key_rate", 0.31444, h.r0, 1e-3);
    t.published("holevo.key_rate_at_published_pc", 0.31444, key_rate(0.804156, 0.0)?, 1e-3);
    t.published("entropy_inverse.half", 0.110028, entropy_inverse(0.5)?, 1e-6);
    Ok(())
}

fn hybrid(t: &mut Table) -> Result<()> {
    t.published("hybrid.i_ae_at_zero", 0.188722, hybrid_analysis(0.0)?.i_ae, 1e-6);
    t.published("hybrid.qber_at_published_f", 0.137931, hybrid_analysis(0.16)?.e, 1e-6);
    let th = hybrid_threshold();
    t.within(
        "hybrid.f_star",
        0.16,
        th.f_star,
        0.155,
        0.175,
        "published value is rounded; exact crossing from bisection",
    );
    t.published("hybrid.e_max", 0.1379, th.e_max, 0.005);
    Ok(())
}

fn cascade(t: &mut Table) -> Result<()> {
    for n in 1..=10 {
        let r = cascade_report(n)?;
        let x = 2f64.powi(-(n as i32));
        t.published(&format!("cascade.trace_distance.n{n}"), x, r.distance, 1e-12);
        t.push(
            &format!("cascade.collision_probability.n{n}"),
            Provenance::Published,
            0.5 * (1.0 + x),
            r.p_c,
            1e-12,
            "collision probability of the raw probe outcome",
        );
    }
    let n = 3;
    let ens = probe_conditional_states(ProtocolId::Cascade, &EveStrategy::CascadeAttack, Conditioning::BlockedBranch, n)?;
    let x = 2f64.powi(-(n as i32));
    t.push(
        "cascade.ensemble.blocked_branch",
        Provenance::Published,
        0.0,
        ensemble_deviation(&ens, &[1.0 - x, x], &[1.0 - x, 0.0, x])?,
        1e-12,
        "n = 3",
    );
    let ev = cascade_evolution(5, Polarization::H, PartyAction::RV, true)?;
    let bob = ev.prepared.probability(SubsystemId::ModeB, H)?.sqrt();
    t.published("cascade.bob_amplitude", 2f64.powf(-2.5), bob, 1e-12);
    let n = 4;
    let ev = cascade_evolution(n, Polarization::V, PartyAction::RH, true)?;
    let mut terms: Vec<(Vec<usize>, f64)> =
        (1..=n).map(|k| (vec![k, VAC, E0], 2f64.powf(-(k as f64) / 2.0))).collect();
    terms.push((vec![0, V, EV], 2f64.powf(-(n as f64) / 2.0)));
    t.push(
        "cascade.onward_state",
        Provenance::Published,
        0.0,
        amplitude_deviation(&ev.after_onward, &terms),
        1e-12,
        "n = 4, j = V",
    );
    Ok(())
}

fn two_way_and_four_state(t: &mut Table) -> Result<()> {
    let s = FRAC_1_SQRT_2;
    let (up, down) = (0, 1);
    let j0 = pingpong_message(0, &EveStrategy::PingPongAttack)?;
    let j1 = pingpong_message(1, &EveStrategy::PingPongAttack)?;
    t.published("pingpong.error_j0", 0.0, j0.error, 1e-12);
    t.published("pingpong.error_j1", 0.5, j1.error, 1e-12);
    t.published(
        "pingpong.state_j0",
        0.0,
        amplitude_deviation(&j0.final_state, &[(vec![up, down, 0], s), (vec![down, up, 0], s)]),
        1e-12,
    );
    t.published(
        "pingpong.state_j1",
        0.0,
        amplitude_deviation(&j1.final_state, &[(vec![up, down, 0], s), (vec![down, up, 1], -s)]),
        1e-12,
    );

    // Four-state variant: |+⟩ sent, Bob reflects |+⟩, Eve uses the H/V attack.
    let ev = michelson_evolution(SignalState::Plus, PartyAction::RPlus, LegPlan::Noiseless)?;
    let probe = ev.after_return.to_density().partial_trace(&[SubsystemId::Probe])?;
    t.positive(
        "bb84mod.residual_entanglement",
        Provenance::Published,
        1.0 - probe.purity(),
        1e-9,
        "linear entropy of the probe after the unattack",
    );
    let q = 1.0 / (2.0 * 2f64.sqrt());
    let printed = [
        (vec![VAC, H, EV], q),
        (vec![VAC, V, EH], q),
        (vec![VAC, H, EH], q),
        (vec![VAC, V, EV], q),
        (vec![VAC, VAC, EH], 0.5),
        (vec![VAC, VAC, EV], -0.5),
        (vec![H, VAC, E0], 0.5),
        (vec![V, VAC, E0], 0.5),
    ];
    t.informational(
        "bb84mod.display",
        Provenance::Published,
        0.0,
        amplitude_deviation(&absorbed_as_vacuum(&ev.after_actions)?, &printed),
        1e-12,
        "published display has squared norm 1.5; every term but the last lacks a factor 1/sqrt2",
    );
    let mut rescaled = printed.to_vec();
    for term in rescaled.iter_mut().take(6) {
        term.1 *= s;
    }
    t.push(
        "bb84mod.display_renormalized",
        Provenance::Derived,
        0.0,
        amplitude_deviation(&absorbed_as_vacuum(&ev.after_actions)?, &rescaled),
        1e-12,
        "published display with all terms but the last scaled by 1/sqrt2",
    );
    t.positive(
        "bb84mod.qber_contribution",
        Provenance::Oracle,
        bb84mod_attacked_qber()?,
        0.0,
        "sifted error rate when Eve applies the H/V attack to all four states",
    );
    let agree = SignalState::ALL
        .iter()
        .flat_map(|a| SignalState::ALL.iter().map(move |b| a.is_diagonal() == b.is_diagonal()))
        .filter(|x| *x)
        .count() as f64
        / 16.0;
    t.push(
        "bb84mod.key_rate",
        Provenance::Published,
        0.5,
        agree * (1.0 - 0.0),
        1e-12,
        "basis-sifting factor times 1 - h(0); no compression",
    );
    Ok(())
}

/// Exact QBER of the four-state variant under the H/V noiseless attack.
pub fn bb84mod_attacked_qber() -> Result<f64> {
    let (mut sifted, mut errors) = (0.0, 0.0);
    for a in SignalState::ALL {
        for r in SignalState::ALL {
            if a.is_diagonal() != r.is_diagonal() {
                continue;
            }
            let ev = michelson_evolution(a, PartyAction::from_reflected(r), LegPlan::Noiseless)?;
            let p = prob_of(&ev.distribution(), DetectorEvent::D1);
            sifted += p;
            if r == a {
                errors += p;
            }
        }
    }
    Ok(errors / sifted)
}

fn sessions(t: &mut Table, rounds: u64, seed: u64) -> Result<()> {
    let run = |protocol, strategy| -> Result<_> {
        let cfg = SessionConfig::new(protocol, rounds, strategy, seed);
        let records = run_records(&cfg)?;
        let stats = summarize(&cfg, &records)?;
        Ok((records, stats))
    };
    let n = rounds as usize;
    let frac = |stats: &crate::protocols::SessionStats, e: DetectorEvent| stats.counts[e.name()] as f64 / rounds as f64;

    let (_, clean) = run(ProtocolId::Noh09, EveStrategy::NoEve)?;
    t.push("noh09.session.d1_fraction", Provenance::Published, 0.125, frac(&clean, DetectorEvent::D1), three_sigma(0.125, n), "3 sigma");

    let (_, quiet) = run(ProtocolId::Noh09, EveStrategy::Noiseless)?;
    t.published("noh09.noiseless.session_qber", 0.0, quiet.qber.unwrap_or(f64::NAN), 0.0);
    let base_acc = quiet.eve_accuracy_blocked.unwrap_or(f64::NAN);

    let f = 0.1;
    let (recs, noisy) = run(ProtocolId::Noh09, EveStrategy::NoisyFlip { f })?;
    t.push(
        "noh09.noisyflip.session_qber",
        Provenance::Published,
        f,
        noisy.qber.unwrap_or(f64::NAN),
        three_sigma(f, noisy.sifted_length),
        "f = 0.1, 3 sigma",
    );
    let blocked = recs.iter().filter(|r| r.is_encoding_round()).count();
    t.push(
        "noh09.noisyflip.blocked_accuracy",
        Provenance::Published,
        base_acc,
        noisy.eve_accuracy_blocked.unwrap_or(f64::NAN),
        2f64.sqrt() * three_sigma(0.75, blocked),
        "against the noiseless-attack session",
    );

    let f = 0.2;
    let (recs, ir) = run(ProtocolId::Noh09, EveStrategy::InterceptResend { f })?;
    t.push(
        "noh09.intercept.double_alice_fraction",
        Provenance::Published,
        f / 2.0,
        frac(&ir, DetectorEvent::DoubleAlice),
        three_sigma(f / 2.0, n),
        "f = 0.2, 3 sigma",
    );
    let hits: Vec<bool> = recs
        .iter()
        .filter(|r| r.event == DetectorEvent::D1)
        .filter_map(|r| r.eve.filter(|e| e.intercepted).map(|e| Some(e.guess) == r.alice_bit()))
        .collect();
    let knowledge = hits.iter().filter(|h| **h).count() as f64 / hits.len().max(1) as f64;
    t.published("noh09.intercept.d1_knowledge", 1.0, if hits.is_empty() { f64::NAN } else { knowledge }, 0.0);

    let (_, sc) = run(ProtocolId::Scqkd, EveStrategy::NoEve)?;
    t.push("scqkd.session.d1_fraction", Provenance::Published, 0.125, frac(&sc, DetectorEvent::D1), three_sigma(0.125, n), "3 sigma");
    Ok(())
}

/// Ids that `reproduce` must always contain: one per published figure.
pub fn claim_inventory() -> Vec<String> {
    let mut ids: Vec<String> = [
        "noh09.encoding.trace_distance",
        "noh09.encoding.p_guess",
        "noh09.encoding.e_prime",
        "noh09.detect.match_d2",
        "noh09.detect.mismatch_db",
        "noh09.detect.mismatch_d2",
        "noh09.detect.mismatch_d1",
        "noh09.noiseless.distribution_shift",
        "scqkd.detect.dissimilar_d1",
        "noh09.noiseless.onward_state",
        "noh09.noiseless.return_match",
        "noh09.noiseless.return_mismatch",
        "noh09.noisyflip.flip_rule",
        "noh09.disturbance.sigma1",
        "noh09.ensemble.blocked_branch",
        "scqkd.ensemble.blocked_branch",
        "guoshi.ensemble.matches_scqkd",
        "noh09.ensemble.d1_event_distance",
        "noh09.ensemble.trace_distance",
        "noh09.ensemble.e_prime",
        "scqkd.ensemble.trace_distance",
        "scqkd.ensemble.e_prime",
        "guess.ternary.tagged_h",
        "guess.ternary.untagged_coin",
        "guess.zero_default.untagged",
        "noh09.channel.posterior_z0",
        "noh09.channel.posterior_z1",
        "noh09.mutual_information",
        "noh09.collision_probability",
        "noh09.key_rate",
        "scqkd.channel.posterior_z1",
        "scqkd.channel.posterior_z0",
        "scqkd.mutual_information",
        "scqkd.collision_probability",
        "scqkd.key_rate",
        "holevo.chi",
        "holevo.e_chi",
        "holevo.collision_probability",
        "holevo.key_rate",
        "holevo.key_rate_at_published_pc",
        "entropy_inverse.half",
        "hybrid.i_ae_at_zero",
        "hybrid.qber_at_published_f",
        "hybrid.f_star",
        "hybrid.e_max",
        "cascade.ensemble.blocked_branch",
        "cascade.bob_amplitude",
        "cascade.onward_state",
        "pingpong.error_j0",
        "pingpong.error_j1",
        "pingpong.state_j0",
        "pingpong.state_j1",
        "bb84mod.residual_entanglement",
        "bb84mod.display",
        "bb84mod.qber_contribution",
        "bb84mod.key_rate",
        "noh09.session.d1_fraction",
        "noh09.noiseless.session_qber",
        "noh09.noisyflip.session_qber",
        "noh09.noisyflip.blocked_accuracy",
        "noh09.intercept.double_alice_fraction",
        "noh09.intercept.d1_knowledge",
        "scqkd.session.d1_fraction",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for n in 1..=10 {
        ids.push(format!("cascade.trace_distance.n{n}"));
        ids.push(format!("cascade.collision_probability.n{n}"));
    }
    ids
}
