/// Counts `x_i` of words `v` with `g(v, w) = 2^{d-i}`, for
/// `i = first_index, first_index + 1, ..., d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    pub first_index: usize,
    pub counts: Vec<usize>,
}

impl Composition {
    pub fn new(first_index: usize, counts: Vec<usize>) -> Composition {
        Composition { first_index, counts }
    }

    /// `x_i`, zero outside the stored range.
    pub fn get(&self, i: usize) -> usize {
        i.checked_sub(self.first_index)
            .and_then(|k| self.counts.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `Σ x_i 2^{d-i}` where `d` is the last index.
    pub fn total(&self) -> u64 {
        let d = self.last_index();
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &x)| (x as u64) << (d - self.first_index - k))
            .sum()
    }

    pub fn last_index(&self) -> usize {
        self.first_index + self.counts.len() - 1
    }
}

/// All solutions of `Σ x_i 2^{d-i} = 2^d`, `Σ x_i = k` over `1 <= i <= d`.
pub fn cover_compositions(k: usize, d: usize) -> Vec<Composition> {
    cover_compositions_from(k, d, 1)
}

/// As [`cover_compositions`] with indices restricted to `first_index..=d`.
///
/// Solutions are listed in decreasing lexicographic order of the counts.
pub fn cover_compositions_from(k: usize, d: usize, first_index: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    if d == 0 || d >= 64 || first_index > d {
        return out;
    }
    let mut counts = vec![0; d - first_index + 1];
    solve(d, first_index, 0, 1u64 << d, k, &mut counts, &mut out);
    out
}

fn solve(
    d: usize,
    first: usize,
    pos: usize,
    measure: u64,
    words: usize,
    counts: &mut [usize],
    out: &mut Vec<Composition>,
) {
    let weight = 1u64 << (d - first - pos);
    if pos + 1 == counts.len() {
        // weight is 1 here
        if measure == words as u64 {
            counts[pos] = words;
            out.push(Composition::new(first, counts.to_vec()));
            counts[pos] = 0;
        }
        return;
    }
    let most = (measure / weight).min(words as u64) as usize;
    for x in (0..=most).rev() {
        let rest = measure - x as u64 * weight;
        let left = words - x;
        // the remaining words weigh between 1 and weight / 2 each
        if rest < left as u64 || rest > left as u64 * (weight / 2) {
            continue;
        }
        counts[pos] = x;
        solve(d, first, pos + 1, rest, left, counts, out);
    }
    counts[pos] = 0;
}
