//! Event-level intercept-resend attack on Noh09.
//!
//! Eve measures the external arm. If she finds the photon she learns its
//! polarization and injects an identical photon back toward Alice; that
//! photon reaches the beam splitter alone and exits D1 or D2 with equal
//! probability, whatever Bob did. If she finds nothing, the photon is in
//! Alice's arm and Eve injects a randomly polarized photon toward Alice,
//! producing a double detection.

use rand::Rng;

use super::guess::ProbeOutcome;
use crate::protocols::{DetectorEvent, EveRecord, Polarization};

/// Samples one intercepted round.
pub fn intercept_resend<R: Rng + ?Sized>(j: Polarization, rng: &mut R) -> (DetectorEvent, EveRecord) {
    if rng.random_bool(0.5) {
        let event = if rng.random_bool(0.5) {
            DetectorEvent::D1
        } else {
            DetectorEvent::D2
        };
        let outcome = match j {
            Polarization::H => ProbeOutcome::EH,
            Polarization::V => ProbeOutcome::EV,
        };
        (
            event,
            EveRecord {
                outcome,
                guess: j.bit(),
                intercepted: true,
                flipped: false,
            },
        )
    } else {
        (
            DetectorEvent::DoubleAlice,
            EveRecord {
                outcome: ProbeOutcome::E0,
                guess: u8::from(rng.random_bool(0.5)),
                intercepted: true,
                flipped: false,
            },
        )
    }
}

/// Exact event distribution of an intercepted round.
pub fn intercept_distribution() -> Vec<(DetectorEvent, f64)> {
    vec![
        (DetectorEvent::D1, 0.25),
        (DetectorEvent::D2, 0.25),
        (DetectorEvent::DoubleAlice, 0.5),
    ]
}
