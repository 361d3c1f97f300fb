use std::collections::HashMap;

use crate::scalar::{Cx, Real};

use super::{ChamberPoint, Covector, RootSystem};

/// An element of the Weyl group, as an integer matrix acting on coordinates
/// over B, together with one reduced word.
///
/// `word = [i₁, …, i_k]` means w = s_{i₁} s_{i₂} ⋯ s_{i_k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: identity(rank),
            word: Vec::new(),
        }
    }

    /// The simple reflection s_i.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        WeylElement {
            matrix: reflection_matrix(rs, i),
            word: vec![i],
        }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// wλ.
    pub fn act<T: Real>(&self, lambda: &Covector<T>) -> Covector<T> {
        let coords = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&lambda.coords)
                    .fold(Cx::new(T::zero(), T::zero()), |acc, (&m, c)| acc + c * T::from_int(m))
            })
            .collect();
        Covector { coords }
    }

    /// The point w·a, i.e. log(w·a) = w log a, in B-root coordinates.
    ///
    /// Root coordinates transform by the inverse transpose of the
    /// coefficient matrix; w being orthogonal, that is the matrix of w⁻¹
    /// transposed.
    pub fn act_point<T: Real>(&self, rs: &RootSystem, a: &ChamberPoint<T>) -> ChamberPoint<T> {
        let inv = self.inverse(rs);
        let n = a.rank();
        let x = (0..n)
            .map(|i| (0..n).fold(T::zero(), |acc, j| acc + T::from_int(inv.matrix[j][i]) * a.x[j]))
            .collect();
        ChamberPoint { x }
    }

    pub fn compose(&self, other: &WeylElement) -> Vec<Vec<i64>> {
        matmul(&self.matrix, &other.matrix)
    }

    /// w⁻¹, with the reversed word.
    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement {
            matrix: word_matrix(rs, &word),
            word,
        }
    }

    /// det w = (−1)^ℓ(w).
    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|r| self.apply_int(&r.coords).iter().any(|&c| c < 0))
            .count()
    }
}

/// Product of simple reflections, left to right.
pub(crate) fn word_matrix(rs: &RootSystem, word: &[usize]) -> Vec<Vec<i64>> {
    word.iter()
        .fold(identity(rs.rank()), |m, &i| matmul(&m, &reflection_matrix(rs, i)))
}

fn reflection_matrix(rs: &RootSystem, i: usize) -> Vec<Vec<i64>> {
    let n = rs.rank();
    let g = rs.gram();
    let mut m = identity(n);
    for k in 0..n {
        m[i][k] -= 2 * g[i][k] / g[i][i];
    }
    m
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// The full Weyl group, generated breadth-first from the identity by right
/// multiplication with simple reflections. The first word reaching an
/// element is kept, so every stored word is reduced and the order is
/// deterministic (by length, then by discovery).
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    longest: usize,
    rank: usize,
}

impl WeylGroup {
    pub fn generate(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let gens: Vec<Vec<Vec<i64>>> = (0..n).map(|i| reflection_matrix(rs, i)).collect();
        let mut elements = vec![WeylElement::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = matmul(&elements[head].matrix, g);
                if !index.contains_key(&m) {
                    let mut word = elements[head].word.clone();
                    word.push(i);
                    index.insert(m.clone(), elements.len());
                    elements.push(WeylElement { matrix: m, word });
                }
            }
            head += 1;
        }
        let longest = elements
            .iter()
            .enumerate()
            .max_by_key(|(_, e)| e.length())
            .map(|(i, _)| i)
            .unwrap_or(0);
        WeylGroup {
            elements,
            index,
            longest,
            rank: n,
        }
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// w₀, the unique element of maximal length.
    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    pub fn get(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn find(&self, matrix: &[Vec<i64>]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Index of the product `a · b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].compose(&self.elements[b]);
        self.find(&m).expect("group is closed under composition")
    }

    /// Index of w⁻¹.
    pub fn inverse_index(&self, a: usize) -> usize {
        (0..self.len())
            .find(|&b| self.product(a, b) == 0)
            .expect("every element has an inverse")
    }

    /// Every reduced word of the element at index `w`, in lexicographic order.
    pub fn reduced_words(&self, rs: &RootSystem, w: usize) -> Vec<Vec<usize>> {
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        let mut out = self.words_rec(rs, w, &mut memo);
        out.sort();
        out
    }

    fn words_rec(
        &self,
        rs: &RootSystem,
        w: usize,
        memo: &mut HashMap<usize, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let elem = &self.elements[w];
        let out = if elem.length() == 0 {
            vec![Vec::new()]
        } else {
            let mut out = Vec::new();
            for i in 0..self.rank {
                // Right descent: w α_i < 0.
                if elem.apply_int(&rs.simple_root(i)).iter().any(|&c| c < 0) {
                    let ws = self.find(&matmul(&elem.matrix, &reflection_matrix(rs, i))).unwrap();
                    for mut word in self.words_rec(rs, ws, memo) {
                        word.push(i);
                        out.push(word);
                    }
                }
            }
            out
        };
        memo.insert(w, out.clone());
        out
    }
}
