//! BB84 quantum phase: preparation, intercept-resend attack, measurement,
//! sifting and sample-based error estimation.
//!
//! Photons are modelled as `(basis, bit)` pairs. Measuring in the preparation
//! basis returns the encoded bit; measuring in the conjugate basis returns a
//! uniformly random bit. The channel is otherwise noiseless, so every error in
//! the sifted keys is caused by the eavesdropper.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{Role, StreamSet};
use crate::Bit;

/// Polarization basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// 0° encodes 0, 90° encodes 1.
    Rectilinear,
    /// 45° encodes 0, 135° encodes 1.
    Diagonal,
}

impl Basis {
    /// Draws either basis with probability 1/2.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen::<bool>() {
            Basis::Diagonal
        } else {
            Basis::Rectilinear
        }
    }
}

/// A single prepared photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhotonState {
    pub basis: Basis,
    pub bit: Bit,
}

impl PhotonState {
    pub fn new(basis: Basis, bit: Bit) -> Self {
        debug_assert!(bit <= 1);
        Self { basis, bit }
    }

    /// Polarization angle in degrees.
    pub fn polarization_degrees(&self) -> u16 {
        match (self.basis, self.bit) {
            (Basis::Rectilinear, 0) => 0,
            (Basis::Rectilinear, _) => 90,
            (Basis::Diagonal, 0) => 45,
            (Basis::Diagonal, _) => 135,
        }
    }
}

/// Bookkeeping for one protocol run; all sequences are indexed by photon.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransmissionRecord {
    pub alice_bits: Vec<Bit>,
    pub alice_bases: Vec<Basis>,
    pub bob_bits: Vec<Bit>,
    pub bob_bases: Vec<Basis>,
    pub eavesdropped_flags: Vec<bool>,
}

impl TransmissionRecord {
    pub fn len(&self) -> usize {
        self.alice_bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alice_bits.is_empty()
    }

    fn check_consistent(&self) -> Result<()> {
        let n = self.alice_bits.len();
        Error::check_len("alice_bases", n, self.alice_bases.len())?;
        Error::check_len("bob_bits", n, self.bob_bits.len())?;
        Error::check_len("bob_bases", n, self.bob_bases.len())?;
        Error::check_len("eavesdropped_flags", n, self.eavesdropped_flags.len())
    }
}

/// Alice's and Bob's sifted keys. Both always have the same length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SiftedKeyPair {
    alice_key: Vec<Bit>,
    bob_key: Vec<Bit>,
}

impl SiftedKeyPair {
    pub fn new(alice_key: Vec<Bit>, bob_key: Vec<Bit>) -> Result<Self> {
        Error::check_len("bob_key", alice_key.len(), bob_key.len())?;
        Ok(Self { alice_key, bob_key })
    }

    pub fn alice_key(&self) -> &[Bit] {
        &self.alice_key
    }

    pub fn bob_key(&self) -> &[Bit] {
        &self.bob_key
    }

    pub fn len(&self) -> usize {
        self.alice_key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alice_key.is_empty()
    }

    pub fn disagreements(&self) -> usize {
        self.alice_key
            .iter()
            .zip(&self.bob_key)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Disagreement fraction over the whole key; 0 for an empty key.
    pub fn error_rate(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.disagreements() as f64 / self.len() as f64
        }
    }

    pub fn into_parts(self) -> (Vec<Bit>, Vec<Bit>) {
        (self.alice_key, self.bob_key)
    }
}

/// Parameters of one quantum-channel run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Probability that Eve intercepts any given photon.
    pub s: f64,
    pub photon_count: usize,
    pub seed: u64,
}

impl ChannelParams {
    pub fn new(s: f64, photon_count: usize, seed: u64) -> Result<Self> {
        check_probability("s", s)?;
        if photon_count == 0 {
            return Err(Error::param("photon_count", "must be at least 1"));
        }
        Ok(Self {
            s,
            photon_count,
            seed,
        })
    }
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(name, format!("{p} is outside [0, 1]")))
    }
}

/// Draws `n` random bits and bases and the photons encoding them.
pub fn alice_prepare<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<(Vec<Bit>, Vec<Basis>, Vec<PhotonState>)> {
    if n == 0 {
        return Err(Error::param("n", "at least one photon must be prepared"));
    }
    let mut bits = Vec::with_capacity(n);
    let mut bases = Vec::with_capacity(n);
    let mut photons = Vec::with_capacity(n);
    for _ in 0..n {
        let bit = rng.gen::<bool>() as Bit;
        let basis = Basis::random(rng);
        bits.push(bit);
        bases.push(basis);
        photons.push(PhotonState::new(basis, bit));
    }
    Ok((bits, bases, photons))
}

/// Measures `photon` in `basis`.
pub fn measure_photon<R: Rng + ?Sized>(photon: PhotonState, basis: Basis, rng: &mut R) -> Bit {
    if photon.basis == basis {
        photon.bit
    } else {
        rng.gen::<bool>() as Bit
    }
}

/// Intercept-resend attack: each photon is captured with probability `s`,
/// measured in a random basis and re-sent as Eve's outcome in Eve's basis.
pub fn eve_intercept_resend<R: Rng + ?Sized>(
    photons: &[PhotonState],
    s: f64,
    rng: &mut R,
) -> Result<(Vec<PhotonState>, Vec<bool>)> {
    check_probability("s", s)?;
    let mut forwarded = Vec::with_capacity(photons.len());
    let mut flags = Vec::with_capacity(photons.len());
    for &photon in photons {
        // gen_bool(1.0) always fires and gen_bool(0.0) never does
        if rng.gen_bool(s) {
            let basis = Basis::random(rng);
            let bit = measure_photon(photon, basis, rng);
            forwarded.push(PhotonState::new(basis, bit));
            flags.push(true);
        } else {
            forwarded.push(photon);
            flags.push(false);
        }
    }
    Ok((forwarded, flags))
}

/// Bob measures every photon in an independently chosen random basis.
pub fn bob_measure<R: Rng + ?Sized>(
    photons: &[PhotonState],
    rng: &mut R,
) -> (Vec<Bit>, Vec<Basis>) {
    photons
        .iter()
        .map(|&photon| {
            let basis = Basis::random(rng);
            (measure_photon(photon, basis, rng), basis)
        })
        .unzip()
}

/// Keeps the positions where Alice's and Bob's bases agree.
pub fn sift(record: &TransmissionRecord) -> Result<SiftedKeyPair> {
    record.check_consistent()?;
    let (alice_key, bob_key) = record
        .alice_bases
        .iter()
        .zip(&record.bob_bases)
        .enumerate()
        .filter(|(_, (a, b))| a == b)
        .map(|(i, _)| (record.alice_bits[i], record.bob_bits[i]))
        .unzip();
    Ok(SiftedKeyPair { alice_key, bob_key })
}

/// Minimum sifted-key length accepted by [`estimate_qber`].
pub const MIN_ESTIMATION_LENGTH: usize = 10;

/// Publicly compares a random sample of the sifted key.
///
/// `round(disclose_fraction * len)` positions are drawn without replacement.
/// Returns the disagreement fraction over the sample and the key pair with
/// the disclosed positions removed.
pub fn estimate_qber<R: Rng + ?Sized>(
    pair: &SiftedKeyPair,
    disclose_fraction: f64,
    rng: &mut R,
) -> Result<(f64, SiftedKeyPair)> {
    if !(disclose_fraction > 0.0 && disclose_fraction < 1.0) {
        return Err(Error::param(
            "disclose_fraction",
            format!("{disclose_fraction} is outside (0, 1)"),
        ));
    }
    let len = pair.len();
    if len < MIN_ESTIMATION_LENGTH {
        return Err(Error::param(
            "sifted key",
            format!("length {len} is below {MIN_ESTIMATION_LENGTH}"),
        ));
    }
    let sample_size = (disclose_fraction * len as f64).round() as usize;
    if sample_size == 0 || sample_size >= len {
        return Err(Error::param(
            "disclose_fraction",
            format!("sample of {sample_size} out of {len} bits is degenerate"),
        ));
    }

    let mut disclosed = vec![false; len];
    for i in index::sample(rng, len, sample_size) {
        disclosed[i] = true;
    }
    let mut errors = 0usize;
    let keep = len - sample_size;
    let mut alice_key = Vec::with_capacity(keep);
    let mut bob_key = Vec::with_capacity(keep);
    for (i, (&a, &b)) in pair.alice_key.iter().zip(&pair.bob_key).enumerate() {
        if disclosed[i] {
            errors += (a != b) as usize;
        } else {
            alice_key.push(a);
            bob_key.push(b);
        }
    }
    Ok((
        errors as f64 / sample_size as f64,
        SiftedKeyPair { alice_key, bob_key },
    ))
}

/// Runs preparation, attack and measurement for `params`, drawing from the
/// sub-streams of sweep point `point`.
pub fn transmit(params: &ChannelParams, point: u64) -> Result<TransmissionRecord> {
    let streams = StreamSet::new(params.seed);
    let mut alice_rng = streams.stream(point, Role::Alice);
    let mut eve_rng = streams.stream(point, Role::Eve);
    let mut bob_rng = streams.stream(point, Role::Bob);

    let (alice_bits, alice_bases, photons) = alice_prepare(params.photon_count, &mut alice_rng)?;
    let (forwarded, eavesdropped_flags) = eve_intercept_resend(&photons, params.s, &mut eve_rng)?;
    let (bob_bits, bob_bases) = bob_measure(&forwarded, &mut bob_rng);
    Ok(TransmissionRecord {
        alice_bits,
        alice_bases,
        bob_bits,
        bob_bases,
        eavesdropped_flags,
    })
}
