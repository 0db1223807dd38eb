//! Stable seeds and fingerprints for matched trials.

use std::hash::Hasher;

use depthmark_core::geometry::PointCloud;
use fnv::FnvHasher;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one trial: a hash of the master seed and the setting.
pub fn trial_seed(master: u64, dataset: &str, noise: &str, budget: usize, trial: usize) -> u64 {
    let mut h = FnvHasher::default();
    h.write(&master.to_le_bytes());
    for part in [dataset, noise] {
        h.write(part.as_bytes());
        h.write(&[0xff]);
    }
    h.write(&(budget as u64).to_le_bytes());
    h.write(&(trial as u64).to_le_bytes());
    splitmix(h.finish())
}

/// A seed derived from `seed` for the named purpose.
pub fn derive(seed: u64, purpose: &str) -> u64 {
    let mut h = FnvHasher::default();
    h.write(&seed.to_le_bytes());
    h.write(purpose.as_bytes());
    splitmix(h.finish())
}

/// Fingerprint of a cloud's coordinates and labels, as 16 hex digits.
pub fn cloud_hash(cloud: &PointCloud) -> String {
    let mut h = FnvHasher::default();
    h.write(&(cloud.dim() as u64).to_le_bytes());
    for c in cloud.coords() {
        h.write(&c.to_bits().to_le_bytes());
    }
    for l in cloud.labels() {
        h.write(l.as_str().as_bytes());
    }
    format!("{:016x}", h.finish())
}
