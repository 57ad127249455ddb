//! Machine-word residue streams for `U_n mod m` with `m < 2^31`.
//!
//! Same recurrence as [`super::lucas_u_mod`], without big-integer allocation.
//! [`zero_indices_batch`] steps several independent sequences in lockstep so
//! the modular reductions overlap in the pipeline.

/// Moduli below this bound keep every intermediate `P*x + Q*y` inside `u64`.
pub const WORD_MODULUS_LIMIT: u64 = 1 << 31;

const LANES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordLucas {
    p: u64,
    neg_q: u64,
    modulus: u64,
}

impl WordLucas {
    pub fn new(p: i64, q: i64, modulus: u64) -> WordLucas {
        assert!((2..WORD_MODULUS_LIMIT).contains(&modulus), "word modulus out of range: {modulus}");
        let m = modulus as i128;
        WordLucas {
            p: (p as i128).rem_euclid(m) as u64,
            neg_q: (-(q as i128)).rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Unbounded stream `U_0, U_1, ...` reduced modulo `m`.
    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        let (mut prev, mut cur) = (0u64, 1 % self.modulus);
        std::iter::from_fn(move || {
            let next = self.p.wrapping_mul(cur).wrapping_add(self.neg_q.wrapping_mul(prev)) % self.modulus;
            let out = prev;
            prev = cur;
            cur = next;
            Some(out)
        })
    }

    /// `{ n <= n_max : m | U_n }`, ascending.
    pub fn zero_indices(&self, n_max: u64) -> Vec<u64> {
        self.residues()
            .take(n_max as usize + 1)
            .enumerate()
            .filter(|(_, r)| *r == 0)
            .map(|(n, _)| n as u64)
            .collect()
    }
}

/// One lockstep job: a sequence and how far to scan it.
#[derive(Clone, Copy, Debug)]
pub struct WordJob {
    pub seq: WordLucas,
    pub n_max: u64,
}

/// [`WordLucas::zero_indices`] for every job, in input order.
///
/// Jobs are processed in groups of eight; sorting them by `n_max` first keeps
/// the lanes of a group equally busy.
pub fn zero_indices_batch(jobs: &[WordJob]) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(jobs.len());
    for chunk in jobs.chunks(LANES) {
        out.extend(lockstep(chunk));
    }
    out
}

fn lockstep(chunk: &[WordJob]) -> Vec<Vec<u64>> {
    // Idle lanes run U_n(1, 0) mod 2, which is 1 from n = 1 on.
    let mut p = [1u64; LANES];
    let mut neg_q = [0u64; LANES];
    let mut m = [2u64; LANES];
    let mut prev = [0u64; LANES];
    let mut cur = [1u64; LANES];
    let mut limit = [0u64; LANES];
    for (i, job) in chunk.iter().enumerate() {
        p[i] = job.seq.p;
        neg_q[i] = job.seq.neg_q;
        m[i] = job.seq.modulus;
        cur[i] = 1 % m[i];
        limit[i] = job.n_max;
    }
    let horizon = chunk.iter().map(|j| j.n_max).max().unwrap_or(0);
    let mut zeros = vec![Vec::new(); LANES];
    for n in 0..=horizon {
        for i in 0..LANES {
            // Both products are below 2^62, so the sum cannot wrap.
            let next = p[i].wrapping_mul(cur[i]).wrapping_add(neg_q[i].wrapping_mul(prev[i])) % m[i];
            if prev[i] == 0 && n <= limit[i] {
                zeros[i].push(n);
            }
            prev[i] = cur[i];
            cur[i] = next;
        }
    }
    zeros.truncate(chunk.len());
    zeros
}
