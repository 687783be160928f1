//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so every verdict is printed. The process fails
//! on any unexpected failure. A criterion listed in `KNOWN_UNATTAINABLE`
//! is still evaluated with its full tolerance and reported as FAIL, but
//! does not fail the process.

use std::f64::consts::FRAC_1_SQRT_2;

use cfqkd::analysis::{
    amplitude_deviation, bb84mod_attacked_qber, cascade_report, collision_probability,
    discrimination_report, guess_channel, holevo_analysis, hybrid_analysis, hybrid_threshold,
    key_rate, mutual_information, reproduce_all, Claim,
};
use cfqkd::attacks::{probe_conditional_states, Conditioning, EveStrategy, GuessRule, LegPlan};
use cfqkd::cli::{render, run_command, Command, CommandSpec, OutputFormat};
use cfqkd::protocols::optics::{self, absorbed_as_vacuum, prob_of, E0, EH, EV, H, V, VAC};
use cfqkd::protocols::{
    cascade_evolution, michelson_evolution, michelson_prepare, noh09_distribution,
    pingpong_message, run_records, summarize, DetectorEvent, PartyAction, Polarization,
    ProtocolId, RoundRecord, SessionConfig, SignalState,
};
use cfqkd::qcore::{binary_entropy, helstrom_guess, trace_distance, SubsystemId};
use cfqkd::{MixedState, ProbeEnsemble};

const ROUNDS: u64 = 100_000;
const SEED: u64 = 20_241_017;
const EXACT: f64 = 1e-12;

/// Criteria that cannot pass against the published material, with the reason.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    4,
    "the published four-state display has squared norm 1.5; every term but the last \
     is too large by sqrt2, so no normalised state matches it at 1e-12",
)];

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        if !((got - want).abs() <= tol) {
            self.failures
                .push(format!("{what}: got {got:.12}, want {want:.12} ± {tol:e}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }
}

fn sigma3(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

fn session(protocol: ProtocolId, strategy: EveStrategy) -> (Vec<RoundRecord>, cfqkd::protocols::SessionStats) {
    let cfg = SessionConfig::new(protocol, ROUNDS, strategy, SEED);
    let records = run_records(&cfg).expect("session runs");
    let stats = summarize(&cfg, &records).expect("session summarises");
    (records, stats)
}

fn fraction(stats: &cfqkd::protocols::SessionStats, e: DetectorEvent) -> f64 {
    stats.counts[e.name()] as f64 / stats.rounds as f64
}

fn blocked_ensemble(protocol: ProtocolId, strategy: EveStrategy, n: usize) -> ProbeEnsemble {
    probe_conditional_states(protocol, &strategy, Conditioning::BlockedBranch, n).expect("ensemble")
}

fn diag(dim: usize, weights: &[f64]) -> MixedState {
    let mut w = weights.to_vec();
    w.resize(dim, 0.0);
    MixedState::diagonal(optics::probe(dim), &w).expect("diagonal state")
}

fn c1_encoding(c: &mut Check) {
    let mode = |w: &[f64]| MixedState::diagonal(optics::mode_a(), &[w[0], w[1], w[2], 0.0]).unwrap();
    let rho_h = mode(&[0.5, 0.5, 0.0]);
    let rho_v = mode(&[0.5, 0.0, 0.5]);
    c.close("trace distance", trace_distance(&rho_h, &rho_v).unwrap(), 0.5, EXACT);
    let g = helstrom_guess(&rho_h, &rho_v, 0.5).unwrap();
    c.close("p_guess", g.p_guess, 0.75, EXACT);
    c.close("e'", g.error, 0.25, EXACT);
}

fn c2_no_eve_statistics(c: &mut Check) {
    for j in [Polarization::H, Polarization::V] {
        let m = noh09_distribution(j, j.reflecting_action(), &EveStrategy::NoEve).unwrap();
        c.close("match D2", prob_of(&m, DetectorEvent::D2), 1.0, EXACT);
        let mm = noh09_distribution(j, j.flipped().reflecting_action(), &EveStrategy::NoEve).unwrap();
        c.close("mismatch DB", prob_of(&mm, DetectorEvent::DB), 0.5, EXACT);
        c.close("mismatch D2", prob_of(&mm, DetectorEvent::D2), 0.25, EXACT);
        c.close("mismatch D1", prob_of(&mm, DetectorEvent::D1), 0.25, EXACT);
    }
    let (records, _) = session(ProtocolId::Noh09, EveStrategy::NoEve);
    let matched: Vec<&RoundRecord> = records
        .iter()
        .filter(|r| r.alice_state.map(SignalState::bit) == r.bob_action.reflected().map(SignalState::bit))
        .collect();
    let d2 = matched.iter().filter(|r| r.event == DetectorEvent::D2).count();
    c.holds("every sampled match round gives D2", d2 == matched.len());
    let mismatched: Vec<&RoundRecord> = records
        .iter()
        .filter(|r| r.alice_state.map(SignalState::bit) != r.bob_action.reflected().map(SignalState::bit))
        .collect();
    let n = mismatched.len();
    for (e, p) in [(DetectorEvent::DB, 0.5), (DetectorEvent::D2, 0.25), (DetectorEvent::D1, 0.25)] {
        let got = mismatched.iter().filter(|r| r.event == e).count() as f64 / n as f64;
        c.close(&format!("sampled mismatch {}", e.name()), got, p, sigma3(p, n));
        c.note(format!("{}={got:.4}", e.name()));
    }
}

fn c3_noiselessness(c: &mut Check) {
    for j in [Polarization::H, Polarization::V] {
        for a in [PartyAction::RH, PartyAction::RV] {
            let clean = noh09_distribution(j, a, &EveStrategy::NoEve).unwrap();
            let hit = noh09_distribution(j, a, &EveStrategy::Noiseless).unwrap();
            for e in DetectorEvent::ALL {
                c.close(
                    &format!("{j:?}/{a} {}", e.name()),
                    prob_of(&hit, e),
                    prob_of(&clean, e),
                    EXACT,
                );
            }
        }
    }
    let (records, stats) = session(ProtocolId::Noh09, EveStrategy::Noiseless);
    c.holds("sampled QBER is exactly 0", stats.qber == Some(0.0));
    let errors = records.iter().filter(|r| r.sifted && r.is_error()).count();
    c.holds("no sifted round is an error", errors == 0);
    c.note(format!("sifted={} errors={errors}", stats.sifted_length));
}

fn c4_state_evolutions(c: &mut Check) {
    let s = FRAC_1_SQRT_2;
    for j in [Polarization::H, Polarization::V] {
        let (l, e) = (j.level(), if j == Polarization::H { EH } else { EV });
        let ev = michelson_evolution(j.into(), j.reflecting_action(), LegPlan::Noiseless).unwrap();
        c.close(
            "post-attack state",
            amplitude_deviation(&ev.after_onward, &[(vec![VAC, l, e], s), (vec![l, VAC, E0], s)]),
            0.0,
            EXACT,
        );
        let back = ev.after_return.max_abs_diff(&michelson_prepare(j.into()).unwrap()).unwrap();
        c.close("unattack, matching action", back, 0.0, EXACT);
        let ev = michelson_evolution(j.into(), j.flipped().reflecting_action(), LegPlan::Noiseless).unwrap();
        c.close(
            "unattack, blocking action",
            amplitude_deviation(
                &absorbed_as_vacuum(&ev.after_return).unwrap(),
                &[(vec![VAC, VAC, e], s), (vec![l, VAC, E0], s)],
            ),
            0.0,
            EXACT,
        );
    }
    for n in 1..=10 {
        for j in [Polarization::H, Polarization::V] {
            let ev = cascade_evolution(n, j, j.flipped().reflecting_action(), true).unwrap();
            let e = if j == Polarization::H { EH } else { EV };
            let mut terms: Vec<(Vec<usize>, f64)> =
                (1..=n).map(|k| (vec![k, VAC, E0], 2f64.powf(-(k as f64) / 2.0))).collect();
            terms.push((vec![0, j.level(), e], 2f64.powf(-(n as f64) / 2.0)));
            c.close(&format!("cascade n={n}"), amplitude_deviation(&ev.after_onward, &terms), 0.0, EXACT);
        }
    }
    let (up, down) = (0, 1);
    let j0 = pingpong_message(0, &EveStrategy::PingPongAttack).unwrap();
    c.close(
        "ping-pong j=0",
        amplitude_deviation(&j0.final_state, &[(vec![up, down, 0], s), (vec![down, up, 0], s)]),
        0.0,
        EXACT,
    );
    let j1 = pingpong_message(1, &EveStrategy::PingPongAttack).unwrap();
    c.close(
        "ping-pong j=1",
        amplitude_deviation(&j1.final_state, &[(vec![up, down, 0], s), (vec![down, up, 1], -s)]),
        0.0,
        EXACT,
    );

    let ev = michelson_evolution(SignalState::Plus, PartyAction::RPlus, LegPlan::Noiseless).unwrap();
    let computed = absorbed_as_vacuum(&ev.after_actions).unwrap();
    let q = 1.0 / (2.0 * 2f64.sqrt());
    let published = [
        (vec![VAC, H, EV], q),
        (vec![VAC, V, EH], q),
        (vec![VAC, H, EH], q),
        (vec![VAC, V, EV], q),
        (vec![VAC, VAC, EH], 0.5),
        (vec![VAC, VAC, EV], -0.5),
        (vec![H, VAC, E0], 0.5),
        (vec![V, VAC, E0], 0.5),
    ];
    let norm2: f64 = published.iter().map(|(_, a)| a * a).sum();
    c.note(format!("published four-state display has squared norm {norm2}"));
    c.close(
        "four-state display as published",
        amplitude_deviation(&computed, &published),
        0.0,
        EXACT,
    );
    let mut rescaled = published.to_vec();
    for t in rescaled.iter_mut().take(6) {
        t.1 *= s;
    }
    let dev = amplitude_deviation(&computed, &rescaled);
    c.note(format!("with all but the last term scaled by 1/sqrt2 the deviation is {dev:.1e}"));
}

fn c5_noh09_ensemble(c: &mut Check) {
    let ens = blocked_ensemble(ProtocolId::Noh09, EveStrategy::Noiseless, 1);
    c.close("D", discrimination_report(&ens).unwrap().distance, 0.5, EXACT);
    let ch = guess_channel(&ens, GuessRule::TernaryCoin).unwrap();
    c.close("I(A:E) binarized", mutual_information(&ch), 0.188722, 1e-6);
    let p_c = collision_probability(&ch).unwrap();
    c.close("p_c", p_c, 0.625, EXACT);
    c.close("r(0)", key_rate(p_c, 0.0).unwrap(), 0.678072, 1e-5);
}

fn c6_holevo(c: &mut Check) {
    let h = holevo_analysis(&blocked_ensemble(ProtocolId::Noh09, EveStrategy::Noiseless, 1)).unwrap();
    c.close("chi", h.chi, 0.5, 1e-9);
    c.close("e'_chi", h.e_chi, 0.110028, 1e-4);
    c.close("p_c", h.p_c, 0.80416, 1e-3);
    c.close("r(0)", h.r0, 0.31444, 1e-3);
}

fn c7_hybrid(c: &mut Check) {
    // Independent derivation: binary entropy written out here, Eve's
    // noiseless-round information taken from the ensemble channel.
    let h = |p: f64| {
        let t = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
        t(p) + t(1.0 - p)
    };
    let ens = blocked_ensemble(ProtocolId::Noh09, EveStrategy::Noiseless, 1);
    let i_noiseless = mutual_information(&guess_channel(&ens, GuessRule::TernaryCoin).unwrap());
    for k in 0..=30 {
        let f = k as f64 / 100.0;
        let p = hybrid_analysis(f).unwrap();
        // Intercepted rounds are a fraction f of Alice's photons but 2f/(1+f)
        // of the sifted key, since they reach D1 twice as often.
        let sifted_intercepted = (f * 0.5) / (f * 0.5 + (1.0 - f) * 0.25);
        c.close(&format!("e({f})"), p.e, sifted_intercepted / 2.0, EXACT);
        c.close(&format!("I_AB({f})"), p.i_ab, 1.0 - h(sifted_intercepted / 2.0), EXACT);
        let i_ae = (1.0 - sifted_intercepted) * i_noiseless + sifted_intercepted;
        c.close(&format!("I_AE({f})"), p.i_ae, i_ae, EXACT);
        c.close("binary entropy agrees", binary_entropy(p.e).unwrap(), h(p.e), EXACT);
    }
    let th = hybrid_threshold();
    c.holds("f* in [0.155, 0.175]", (0.155..=0.175).contains(&th.f_star));
    c.close("e_max", th.e_max, 0.1379, 0.005);
    c.note(format!("f*={:.10} (published 0.16), e_max={:.10}", th.f_star, th.e_max));
}

fn c8_noisy_flip(c: &mut Check) {
    let (records, quiet) = session(ProtocolId::Noh09, EveStrategy::Noiseless);
    let base = quiet.eve_accuracy_blocked.unwrap();
    let n_base = records.iter().filter(|r| r.is_encoding_round()).count();
    for f in [0.05, 0.1, 0.2] {
        let (records, stats) = session(ProtocolId::Noh09, EveStrategy::NoisyFlip { f });
        let e = stats.qber.unwrap();
        c.close(&format!("QBER at f={f}"), e, f, sigma3(f, stats.sifted_length));
        let n = records.iter().filter(|r| r.is_encoding_round()).count();
        let acc = stats.eve_accuracy_blocked.unwrap();
        let tol = 3.0 * (0.1875 / n as f64 + 0.1875 / n_base as f64).sqrt();
        c.close(&format!("blocked-round accuracy at f={f}"), acc, base, tol);
        c.note(format!("f={f}: e={e:.4}, accuracy={acc:.4} vs {base:.4}"));
    }
}

fn c9_intercept_resend(c: &mut Check) {
    for f in [0.1, 0.3] {
        let (records, stats) = session(ProtocolId::Noh09, EveStrategy::InterceptResend { f });
        let da = fraction(&stats, DetectorEvent::DoubleAlice);
        c.close(&format!("DoubleAlice at f={f}"), da, f / 2.0, sigma3(f / 2.0, ROUNDS as usize));
        let hits: Vec<bool> = records
            .iter()
            .filter(|r| r.event == DetectorEvent::D1)
            .filter_map(|r| r.eve.filter(|e| e.intercepted).map(|e| Some(e.guess) == r.alice_bit()))
            .collect();
        c.holds("some intercepted rounds reach D1", !hits.is_empty());
        c.holds("Eve knows every intercepted D1 bit", hits.iter().all(|h| *h));
        c.note(format!("f={f}: DoubleAlice={da:.4}, intercepted D1 rounds={}", hits.len()));
    }
}

fn c10_scqkd(c: &mut Check) {
    let (_, stats) = session(ProtocolId::Scqkd, EveStrategy::NoEve);
    let d1 = fraction(&stats, DetectorEvent::D1);
    c.close("D1 fraction", d1, 0.125, sigma3(0.125, ROUNDS as usize));
    let sc = blocked_ensemble(ProtocolId::Scqkd, EveStrategy::Noiseless, 1);
    let ch = guess_channel(&sc, GuessRule::ZeroDefault).unwrap();
    let post = |z: usize, x: usize| ch.posterior[z].as_ref().unwrap()[x];
    c.close("P(X=1|Z=1)", post(1, 1), 1.0, EXACT);
    c.close("P(X=0|Z=0)", post(0, 0), 2.0 / 3.0, EXACT);
    c.close("I(A:E)", mutual_information(&ch), 0.311278, 1e-6);
    let p_c = collision_probability(&ch).unwrap();
    c.close("p_c", p_c, 2.0 / 3.0, EXACT);
    c.close("r(0)", key_rate(p_c, 0.0).unwrap(), 0.584963, 1e-5);
    let gs = blocked_ensemble(ProtocolId::Guoshi, EveStrategy::GuoShiAttack, 1);
    c.close("Guo-Shi ensemble", gs.max_abs_diff(&sc).unwrap(), 0.0, EXACT);
}

fn c11_cascade(c: &mut Check) {
    for n in 1..=10 {
        let r = cascade_report(n).unwrap();
        let x = 2f64.powi(-(n as i32));
        c.close(&format!("D({n})"), r.distance, x, EXACT);
        c.close(&format!("p_c({n})"), r.p_c, 0.5 * (1.0 + x), EXACT);
    }
}

fn c12_pingpong(c: &mut Check) {
    let e0 = pingpong_message(0, &EveStrategy::PingPongAttack).unwrap().error;
    let e1 = pingpong_message(1, &EveStrategy::PingPongAttack).unwrap().error;
    c.close("error j=0", e0, 0.0, EXACT);
    c.close("error j=1", e1, 0.5, EXACT);
    for j in [0, 1] {
        let clean = pingpong_message(j, &EveStrategy::NoEve).unwrap().error;
        c.close("error without Eve", clean, 0.0, EXACT);
    }
}

fn c13_four_state(c: &mut Check, claims: &[Claim]) {
    let ev = michelson_evolution(SignalState::Plus, PartyAction::RPlus, LegPlan::Noiseless).unwrap();
    let probe = ev.after_return.to_density().partial_trace(&[SubsystemId::Probe]).unwrap();
    let linear_entropy = 1.0 - probe.purity();
    c.holds("probe stays entangled after the unattack", linear_entropy > 1e-9);
    let q = bb84mod_attacked_qber().unwrap();
    c.holds("attack induces a positive QBER", q > 0.0);
    let row = claims.iter().find(|r| r.id == "bb84mod.qber_contribution");
    c.holds(
        "QBER recorded in the claim table",
        row.is_some_and(|r| r.computed == q && r.pass),
    );
    let rate = claims.iter().find(|r| r.id == "bb84mod.key_rate");
    c.holds("key rate 0.5 reported", rate.is_some_and(|r| r.pass && r.computed == 0.5));
    c.note(format!("probe linear entropy {linear_entropy:.6}, induced QBER {q:.6}"));
}

fn c14_conditioning(c: &mut Check, claims: &[Claim]) {
    let noh = blocked_ensemble(ProtocolId::Noh09, EveStrategy::Noiseless, 1);
    let expect = ProbeEnsemble::binary(diag(3, &[0.5, 0.5]), diag(3, &[0.5, 0.0, 0.5])).unwrap();
    c.close("blocked branch, noh09", noh.max_abs_diff(&expect).unwrap(), 0.0, EXACT);
    let sc = blocked_ensemble(ProtocolId::Scqkd, EveStrategy::Noiseless, 1);
    let dim = sc.subsystems()[0].dim;
    let expect = ProbeEnsemble::binary(diag(dim, &[1.0]), diag(dim, &[0.5, 0.5])).unwrap();
    c.close("blocked branch, scqkd", sc.max_abs_diff(&expect).unwrap(), 0.0, EXACT);
    for n in 1..=10 {
        let ens = blocked_ensemble(ProtocolId::Cascade, EveStrategy::CascadeAttack, n);
        let x = 2f64.powi(-(n as i32));
        let expect = ProbeEnsemble::binary(diag(3, &[1.0 - x, x]), diag(3, &[1.0 - x, 0.0, x])).unwrap();
        c.close(&format!("blocked branch, cascade n={n}"), ens.max_abs_diff(&expect).unwrap(), 0.0, EXACT);
    }
    let d1 = probe_conditional_states(ProtocolId::Noh09, &EveStrategy::Noiseless, Conditioning::D1Event, 1).unwrap();
    let d1_distance = discrimination_report(&d1).unwrap().distance;
    c.note(format!("D1-event conditioned D = {d1_distance:.3} (blocked branch D = 0.5)"));
    let row = claims.iter().find(|r| r.id == "noh09.ensemble.d1_event_distance");
    c.holds(
        "D1-event row reported and non-gating",
        row.is_some_and(|r| !r.gating && (r.computed - d1_distance).abs() <= EXACT),
    );
    c.holds(
        "claim table passes on gating rows",
        claims.iter().all(|r| r.pass || !r.gating),
    );
}

fn c15_determinism(c: &mut Check) {
    let mut spec = CommandSpec::defaults(Command::Simulate);
    spec.rounds = 20_000;
    spec.seed = 99;
    spec.attack = cfqkd::attacks::AttackKind::Hybrid;
    let json = |workers: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap();
        pool.install(|| {
            let (_, doc) = run_command(&spec).unwrap();
            render(&doc, OutputFormat::Json).unwrap()
        })
    };
    let one = json(1);
    for w in [2, 3, 8] {
        c.holds(&format!("{w} workers match 1 worker byte for byte"), json(w) == one);
    }
    c.holds("repeat run matches", json(1) == one);
}

fn main() {
    let claims = reproduce_all().expect("claim table");
    type Criterion<'a> = (u32, &'a str, Box<dyn Fn(&mut Check) + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "encoding discrimination", Box::new(c1_encoding)),
        (2, "no-Eve detector statistics", Box::new(c2_no_eve_statistics)),
        (3, "noiselessness", Box::new(c3_noiselessness)),
        (4, "state evolutions", Box::new(c4_state_evolutions)),
        (5, "Noh09 ensemble analytics", Box::new(c5_noh09_ensemble)),
        (6, "Holevo analysis", Box::new(c6_holevo)),
        (7, "hybrid attack", Box::new(c7_hybrid)),
        (8, "noisy-flip attack", Box::new(c8_noisy_flip)),
        (9, "intercept-resend", Box::new(c9_intercept_resend)),
        (10, "SC-QKD and Guo-Shi", Box::new(c10_scqkd)),
        (11, "cascade scaling", Box::new(c11_cascade)),
        (12, "ping-pong message mode", Box::new(c12_pingpong)),
        (13, "four-state variant", Box::new(|c: &mut Check| c13_four_state(c, &claims))),
        (14, "conditioning cross-check", Box::new(|c: &mut Check| c14_conditioning(c, &claims))),
        (15, "determinism", Box::new(c15_determinism)),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, run) in &criteria {
        let mut check = Check::new();
        run(&mut check);
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| k == id);
        if check.failures.is_empty() {
            passed += 1;
            println!("criterion {id:>2} PASS  {name}");
        } else {
            println!("criterion {id:>2} FAIL  {name}");
            for f in &check.failures {
                println!("      failed: {f}");
            }
            match known {
                Some((_, why)) => println!("      known unattainable: {why}"),
                None => unexpected.push(*id),
            }
        }
        for n in &check.notes {
            println!("      {n}");
        }
    }
    println!(
        "acceptance: {passed}/{} criteria pass; unexpected failures: {:?}",
        criteria.len(),
        unexpected
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
