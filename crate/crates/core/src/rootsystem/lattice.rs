use std::collections::HashMap;

/// μ = Σ_{α∈B} n_α α ∈ Q₊.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub n: Vec<u32>,
}

impl LatticePoint {
    pub fn zero(rank: usize) -> Self {
        LatticePoint { n: vec![0; rank] }
    }

    /// n(μ) = Σ n_α.
    pub fn height(&self) -> usize {
        self.n.iter().map(|&c| c as usize).sum()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.n.iter().map(|&c| i64::from(c)).collect()
    }
}

/// All μ ∈ Q₊ with n(μ) ≤ `max_height`, by height and then lexicographically.
pub fn enumerate_qplus(rank: usize, max_height: usize) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for h in 0..=max_height {
        let mut buf = vec![0u32; rank];
        compositions(h as u32, 0, &mut buf, &mut out);
    }
    out
}

fn compositions(rest: u32, pos: usize, buf: &mut Vec<u32>, out: &mut Vec<LatticePoint>) {
    if pos + 1 == buf.len() {
        buf[pos] = rest;
        out.push(LatticePoint { n: buf.clone() });
        return;
    }
    if buf.is_empty() {
        if rest == 0 {
            out.push(LatticePoint { n: Vec::new() });
        }
        return;
    }
    for first in 0..=rest {
        buf[pos] = first;
        compositions(rest - first, pos + 1, buf, out);
    }
}

const DENSE_LIMIT: usize = 1 << 22;

enum Lookup {
    Dense { strides: Vec<usize>, slots: Vec<u32> },
    Sparse(HashMap<Vec<u32>, usize>),
}

/// The height-truncated lattice {μ ∈ Q₊ : n(μ) ≤ N} with O(1) index lookup.
pub struct LatticeTable {
    rank: usize,
    height: usize,
    points: Vec<LatticePoint>,
    shell_start: Vec<usize>,
    lookup: Lookup,
}

impl std::fmt::Debug for LatticeTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LatticeTable")
            .field("rank", &self.rank)
            .field("height", &self.height)
            .field("points", &self.points.len())
            .finish()
    }
}

impl LatticeTable {
    pub fn new(rank: usize, height: usize) -> Self {
        let points = enumerate_qplus(rank, height);
        let mut shell_start = vec![0; height + 2];
        for (i, p) in points.iter().enumerate().rev() {
            shell_start[p.height()] = i;
        }
        shell_start[height + 1] = points.len();
        let side = height + 1;
        let box_size = side.checked_pow(rank as u32).unwrap_or(usize::MAX);
        let lookup = if box_size <= DENSE_LIMIT {
            let strides: Vec<usize> = (0..rank).map(|i| side.pow(i as u32)).collect();
            let mut slots = vec![u32::MAX; box_size];
            for (idx, p) in points.iter().enumerate() {
                let s: usize = p.n.iter().zip(&strides).map(|(&c, &st)| c as usize * st).sum();
                slots[s] = idx as u32;
            }
            Lookup::Dense { strides, slots }
        } else {
            Lookup::Sparse(points.iter().enumerate().map(|(i, p)| (p.n.clone(), i)).collect())
        };
        LatticeTable {
            rank,
            height,
            points,
            shell_start,
            lookup,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index range of the points of height exactly `h`.
    pub fn shell(&self, h: usize) -> std::ops::Range<usize> {
        self.shell_start[h]..self.shell_start[h + 1]
    }

    /// Index of `base − j·delta`, if it lies in the table. Allocation-free on
    /// the dense path; this is the inner loop of every recurrence.
    pub fn index_of_shifted(&self, base: &[u32], delta: &[i64], j: i64) -> Option<usize> {
        let mut height = 0i64;
        for (&b, &d) in base.iter().zip(delta) {
            let c = i64::from(b) - j * d;
            if c < 0 {
                return None;
            }
            height += c;
        }
        if height as usize > self.height {
            return None;
        }
        match &self.lookup {
            Lookup::Dense { strides, slots } => {
                let s: usize = base
                    .iter()
                    .zip(delta)
                    .zip(strides)
                    .map(|((&b, &d), &st)| (i64::from(b) - j * d) as usize * st)
                    .sum();
                let v = slots[s];
                (v != u32::MAX).then_some(v as usize)
            }
            Lookup::Sparse(map) => {
                let key: Vec<u32> = base
                    .iter()
                    .zip(delta)
                    .map(|(&b, &d)| (i64::from(b) - j * d) as u32)
                    .collect();
                map.get(&key).copied()
            }
        }
    }

    /// Index of the point with coefficients `n`, if it lies in the table.
    pub fn index_of(&self, n: &[i64]) -> Option<usize> {
        if n.iter().any(|&c| c < 0) || n.iter().sum::<i64>() as usize > self.height {
            return None;
        }
        match &self.lookup {
            Lookup::Dense { strides, slots } => {
                let s: usize = n.iter().zip(strides).map(|(&c, &st)| c as usize * st).sum();
                let v = slots[s];
                (v != u32::MAX).then_some(v as usize)
            }
            Lookup::Sparse(map) => {
                let key: Vec<u32> = n.iter().map(|&c| c as u32).collect();
                map.get(&key).copied()
            }
        }
    }
}
