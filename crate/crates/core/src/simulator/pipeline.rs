//! Transmit/receive pipeline of a single block.
//!
//! Transmitters see only the [`Design`] (derived from the distribution) and
//! their messages; receivers additionally know the realized states. A
//! receiver decodes its streams in order. A slot of the current stream is
//! usable when its level survives and the position it lands on is either free
//! of the other user, occupied by a silent level, or occupied by a stream this
//! receiver already decoded, in which case the re-encoded bit is XORed out.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::channel::{landing_position, overlapping_level, Geometry};
use super::scheme::{design, Design, SchemeSpec};
use super::SimError;
use crate::coding::{Bits, Codebook, CodingError};
use crate::model::{BitColumn, Instance, Level};
use crate::scalar::Probability;

/// Usable-slot count of one stream at one receiver and level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSlots {
    pub receiver: usize,
    pub user: usize,
    pub level: Level,
    pub slots: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    /// Usable slots gathered over every decode attempt at each receiver.
    pub clean_slots_rx1: usize,
    pub clean_slots_rx2: usize,
    pub per_level: Vec<LevelSlots>,
}

/// Outcome of one simulated block.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub ok_user1: bool,
    pub ok_user2: bool,
    /// Message bits of each user over the block, independent of decoding.
    pub bits1: usize,
    pub bits2: usize,
    /// `bits / T`.
    pub rate1: f64,
    pub rate2: f64,
    pub diagnostics: Diagnostics,
}

impl TrialResult {
    pub fn sum_rate(&self) -> f64 {
        self.rate1 + self.rate2
    }
}

/// Attempt to decode one stream at one receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeRecord {
    pub receiver: usize,
    pub stream: usize,
    pub user: usize,
    pub decoded: bool,
    /// `(use, level)` pairs that survived but were unusable.
    pub erased: Vec<(usize, Level)>,
}

/// Everything a block produced, for inspection in tests.
#[derive(Debug, Clone)]
pub struct Trace {
    pub geometry: Geometry,
    pub inputs: [Vec<BitColumn>; 2],
    pub outputs: Vec<Vec<BitColumn>>,
    /// `rebuilt[r][u]`: user `u`'s input columns re-encoded from the streams
    /// receiver `r` decoded, when it decoded all of them.
    pub rebuilt: Vec<[Option<Vec<BitColumn>>; 2]>,
    pub records: Vec<DecodeRecord>,
}

/// Per-stream codebook and slot layout.
struct Stream {
    user: usize,
    levels: Vec<Level>,
    codebook: Codebook,
}

impl Stream {
    fn slot(&self, t: usize, level: Level) -> usize {
        let pos = self.levels.iter().position(|&l| l == level).expect("level belongs to stream");
        t * self.levels.len() + pos
    }
}

/// `⌊(1 − ε) · rate · T⌋`, with a small guard against representation error.
fn codebook_size(rate: f64, backoff: f64, block: usize) -> (usize, f64) {
    let exact = (1.0 - backoff) * rate * block as f64;
    let k = (exact + 1e-9).floor().max(0.0);
    (k as usize, (exact - k).max(0.0))
}

pub(crate) struct Sized<T> {
    design: Design<T>,
    sizes: Vec<usize>,
}

pub(crate) fn size_design<T: Probability>(instance: &Instance<T>, spec: &SchemeSpec) -> Result<Sized<T>, SimError> {
    let design = design(&spec.kind, instance)?;
    let block = spec.block_length;
    let mut loss = 0.0;
    let mut total = 0.0;
    let sizes = design
        .streams
        .iter()
        .map(|s| {
            let r = s.rate.to_f64();
            let (k, frac) = codebook_size(r, spec.backoff, block);
            loss += frac;
            total += r;
            k
        })
        .collect();
    let budget = spec.backoff.abs() / 2.0 * total * block as f64;
    if total > 0.0 && loss >= budget {
        return Err(SimError::Configuration(format!(
            "block length {block} too short: flooring loses {:.4} bits/use, budget {:.4}",
            loss / block as f64,
            budget / block as f64
        )));
    }
    Ok(Sized { design, sizes })
}

/// Simulates one block of `spec` on `instance`.
pub fn run_scheme<T: Probability>(
    instance: &Instance<T>,
    spec: &SchemeSpec,
    seed: u64,
) -> Result<TrialResult, SimError> {
    run_scheme_traced(instance, spec, seed).map(|(r, _)| r)
}

pub fn run_scheme_traced<T: Probability>(
    instance: &Instance<T>,
    spec: &SchemeSpec,
    seed: u64,
) -> Result<(TrialResult, Trace), SimError> {
    let sized = size_design(instance, spec)?;
    let block = spec.block_length;
    let q = sized.design.q;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let geometry = Geometry::sample(instance, block, rng.next_u64());

    // transmit side
    let mut assigned: [Vec<Option<usize>>; 2] = [vec![None; q as usize + 1], vec![None; q as usize + 1]];
    let mut streams = Vec::with_capacity(sized.design.streams.len());
    let mut messages = Vec::with_capacity(streams.capacity());
    let mut inputs: [Vec<BitColumn>; 2] = [vec![BitColumn::zeros(q); block], vec![BitColumn::zeros(q); block]];
    for (i, (s, &k)) in sized.design.streams.iter().zip(&sized.sizes).enumerate() {
        let n_slots = s.levels.len() * block;
        let codebook = Codebook::overloaded(k, n_slots, rng.next_u64());
        let msg = Bits::random(k, &mut rng);
        let word = codebook.encode(&msg)?;
        for &l in &s.levels {
            debug_assert!(assigned[s.user][l as usize].is_none());
            assigned[s.user][l as usize] = Some(i);
        }
        let stream = Stream { user: s.user, levels: s.levels.clone(), codebook };
        write_stream(&stream, &word, &mut inputs[s.user], block);
        streams.push(stream);
        messages.push(msg);
    }

    let outputs = geometry.outputs(&inputs);

    // receive side
    let mut diagnostics = Diagnostics::default();
    let mut records = Vec::new();
    let mut rebuilt = Vec::with_capacity(geometry.receivers.len());
    let mut decoded_at = Vec::with_capacity(geometry.receivers.len());
    for (r, order) in sized.design.decode_order.iter().enumerate() {
        let heard = &geometry.receivers[r];
        let mut known: Vec<Option<Bits>> = vec![None; streams.len()];
        for &si in order {
            let stream = &streams[si];
            let (user, other) = (stream.user, 1 - stream.user);
            let mut rx = Vec::new();
            let mut erased = Vec::new();
            let mut per_level = vec![0usize; stream.levels.len()];
            for (t, n) in heard.iter().enumerate() {
                for (li, &l) in stream.levels.iter().enumerate() {
                    let Some(pos) = landing_position(q, n[user], l) else { continue };
                    let mut bit = outputs[r][t].get(pos);
                    if let Some(ol) = overlapping_level(n[user], n[other], l) {
                        if let Some(os) = assigned[other][ol as usize] {
                            match &known[os] {
                                Some(word) => bit ^= word.get(streams[os].slot(t, ol)),
                                None => {
                                    erased.push((t, l));
                                    continue;
                                }
                            }
                        }
                    }
                    per_level[li] += 1;
                    rx.push((stream.slot(t, l), bit));
                }
            }
            let decoded = match stream.codebook.decode(&rx) {
                Ok(m) => {
                    if m != messages[si] {
                        return Err(SimError::Unsound { stream: si, receiver: r });
                    }
                    known[si] = Some(stream.codebook.encode(&m)?);
                    true
                }
                Err(CodingError::InsufficientRank { .. } | CodingError::TooFewSlots { .. }) => false,
                Err(e) => return Err(e.into()),
            };
            match r {
                0 => diagnostics.clean_slots_rx1 += rx.len(),
                _ => diagnostics.clean_slots_rx2 += rx.len(),
            }
            for (li, &l) in stream.levels.iter().enumerate() {
                diagnostics.per_level.push(LevelSlots { receiver: r, user, level: l, slots: per_level[li] });
            }
            records.push(DecodeRecord { receiver: r, stream: si, user, decoded, erased });
        }
        let rebuild = |u: usize| -> Option<Vec<BitColumn>> {
            let mut cols = vec![BitColumn::zeros(q); block];
            for (si, s) in streams.iter().enumerate().filter(|(_, s)| s.user == u) {
                write_stream(s, known[si].as_ref()?, &mut cols, block);
            }
            Some(cols)
        };
        rebuilt.push([rebuild(0), rebuild(1)]);
        decoded_at.push(known.iter().map(Option::is_some).collect::<Vec<_>>());
    }

    let user_ok = |u: usize| {
        let r = geometry.intended[u];
        streams.iter().enumerate().filter(|(_, s)| s.user == u).all(|(si, _)| decoded_at[r][si])
    };
    let bits = |u: usize| streams.iter().filter(|s| s.user == u).map(|s| s.codebook.k()).sum::<usize>();
    let (bits1, bits2) = (bits(0), bits(1));
    let result = TrialResult {
        ok_user1: user_ok(0),
        ok_user2: user_ok(1),
        bits1,
        bits2,
        rate1: bits1 as f64 / block as f64,
        rate2: bits2 as f64 / block as f64,
        diagnostics,
    };
    Ok((result, Trace { geometry, inputs, outputs, rebuilt, records }))
}

fn write_stream(stream: &Stream, word: &Bits, cols: &mut [BitColumn], block: usize) {
    for (t, col) in cols.iter_mut().enumerate().take(block) {
        for (li, &l) in stream.levels.iter().enumerate() {
            col.set(l, word.get(t * stream.levels.len() + li));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateTriple;
    use crate::simulator::SchemeKind;
    use crate::{rational, FadingDistribution};

    #[test]
    fn sizing_floors_and_reports_fraction() {
        assert_eq!(codebook_size(1.0, 0.1, 2000).0, 1800);
        assert_eq!(codebook_size(0.5, 0.1, 2000).0, 900);
        let (k, frac) = codebook_size(1.0 / 3.0, 0.0, 10);
        assert_eq!(k, 3);
        assert!((frac - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn short_blocks_are_rejected() {
        let d = Instance::Ifc(FadingDistribution::point_mass(4, StateTriple::new(3, 1, 2)).unwrap());
        let spec = SchemeSpec::new(SchemeKind::Weak, 0.1, 3).unwrap();
        assert!(matches!(run_scheme(&d, &spec, 1), Err(SimError::Configuration(_))));
    }

    #[test]
    fn weak_scheme_on_constant_channel_always_decodes() {
        // (a, b, c) = (3, 1, 2): user 2 gets one clean level per use.
        let d = Instance::Ifc(FadingDistribution::point_mass(4, StateTriple::new(3, 1, 2)).unwrap());
        for (eps, t) in [(0.1, 200), (0.25, 400)] {
            let spec = SchemeSpec::new(SchemeKind::Weak, eps, t).unwrap();
            for seed in 0..5 {
                let r = run_scheme(&d, &spec, seed).unwrap();
                assert!(r.ok_user1 && r.ok_user2, "eps {eps} seed {seed}");
            }
        }
    }

    #[test]
    fn rates_do_not_depend_on_outcome() {
        let ex = Instance::Ifc(
            FadingDistribution::new(
                4,
                vec![(StateTriple::new(2, 1, 4), rational(1, 2)), (StateTriple::new(1, 4, 1), rational(1, 2))],
            )
            .unwrap(),
        );
        let good = run_scheme(&ex, &SchemeSpec::new(SchemeKind::ErgodicVS, 0.1, 400).unwrap(), 3).unwrap();
        assert!((good.rate1 - 0.9 * 1.5).abs() < 1e-9);
        assert!((good.rate2 - 0.9 * 2.5).abs() < 1e-9);
        let bad = run_scheme(&ex, &SchemeSpec::new(SchemeKind::ErgodicVS, -0.1, 400).unwrap(), 3).unwrap();
        assert!(!bad.ok_user2);
        assert!((bad.rate1 - 1.1 * 1.5).abs() < 1e-9);
    }
}
