//! Language oracles for one-sided subshifts.

use crate::kneading::KneadingData;
use crate::symbols::{default_labels, Symbol, Verdict, Word};

pub trait SubshiftOracle: Sync {
    fn alphabet_size(&self) -> usize;

    fn labels(&self) -> Vec<String> {
        default_labels(self.alphabet_size())
    }

    /// Whether `w` occurs in the subshift. Factorial: subwords of yes-words are yes-words.
    fn admits(&self, w: &[Symbol]) -> Verdict;

    /// Exact follower-set comparison, when the source provides one.
    fn exact_follower_equal(&self, _a: &[Symbol], _b: &[Symbol]) -> Option<Verdict> {
        None
    }

    fn source(&self) -> &'static str;
}

/// Language of a piecewise monotone map, decided through its kneading data.
#[derive(Clone, Debug)]
pub struct KneadingOracle {
    pub kneading: KneadingData,
}

impl KneadingOracle {
    pub fn new(kneading: KneadingData) -> Self {
        KneadingOracle { kneading }
    }
}

impl SubshiftOracle for KneadingOracle {
    fn alphabet_size(&self) -> usize {
        self.kneading.alphabet_size
    }

    fn labels(&self) -> Vec<String> {
        self.kneading.labels.clone()
    }

    fn admits(&self, w: &[Symbol]) -> Verdict {
        self.kneading.admits(w)
    }

    fn exact_follower_equal(&self, a: &[Symbol], b: &[Symbol]) -> Option<Verdict> {
        let kd = &self.kneading;
        Some(match (kd.pair_of(a), kd.pair_of(b)) {
            (Ok(Some(p)), Ok(Some(q))) => kd.pair_eq(&p, &q),
            (Ok(None), Ok(None)) => Verdict::Yes,
            (Ok(_), Ok(_)) => Verdict::No,
            _ => Verdict::Undecidable,
        })
    }

    fn source(&self) -> &'static str {
        "kneading"
    }
}

/// Subshift given by forbidden factors. The list is complete for words up to `complete_up_to`;
/// longer words with no listed factor are undecided.
#[derive(Clone, Debug)]
pub struct ForbiddenWords {
    pub alphabet: usize,
    pub words: Vec<Word>,
    pub complete_up_to: usize,
}

impl ForbiddenWords {
    /// A finite list: a subshift of finite type, exact at every length.
    pub fn finite(alphabet: usize, words: Vec<Word>) -> Self {
        ForbiddenWords { alphabet, words, complete_up_to: usize::MAX }
    }

    /// The even shift: `0 1^(2k+1) 0` forbidden, listed up to length `max_len`.
    pub fn even_shift(max_len: usize) -> Self {
        let mut words = Vec::new();
        let mut k = 1;
        while k + 2 <= max_len {
            let mut w = vec![0];
            w.extend(std::iter::repeat_n(1, k));
            w.push(0);
            words.push(w);
            k += 2;
        }
        ForbiddenWords { alphabet: 2, words, complete_up_to: max_len }
    }
}

fn contains_factor(w: &[Symbol], f: &[Symbol]) -> bool {
    f.len() <= w.len() && w.windows(f.len()).any(|x| x == f)
}

impl SubshiftOracle for ForbiddenWords {
    fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    fn admits(&self, w: &[Symbol]) -> Verdict {
        if w.iter().any(|&s| s as usize >= self.alphabet) {
            return Verdict::No;
        }
        if self.words.iter().any(|f| contains_factor(w, f)) {
            return Verdict::No;
        }
        if w.len() > self.complete_up_to {
            Verdict::Undecidable
        } else {
            Verdict::Yes
        }
    }

    fn source(&self) -> &'static str {
        "forbidden-words"
    }
}

/// Vertex shift of a 0/1 matrix, restricted to vertices on bi-infinite paths.
#[derive(Clone, Debug)]
pub struct SftOracle {
    pub matrix: Vec<Vec<u8>>,
    alive: Vec<bool>,
}

impl SftOracle {
    pub fn new(matrix: Vec<Vec<u8>>) -> Self {
        let n = matrix.len();
        let mut alive = vec![true; n];
        // Repeatedly drop vertices without alive successors or alive predecessors.
        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let out = (0..n).any(|u| alive[u] && matrix[v][u] != 0);
                let inn = (0..n).any(|u| alive[u] && matrix[u][v] != 0);
                if !out || !inn {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        SftOracle { matrix, alive }
    }
}

impl SubshiftOracle for SftOracle {
    fn alphabet_size(&self) -> usize {
        self.matrix.len()
    }

    fn admits(&self, w: &[Symbol]) -> Verdict {
        let n = self.matrix.len();
        let ok = w.iter().all(|&s| (s as usize) < n && self.alive[s as usize])
            && w.windows(2).all(|p| self.matrix[p[0] as usize][p[1] as usize] != 0);
        Verdict::from_bool(ok)
    }

    fn exact_follower_equal(&self, a: &[Symbol], b: &[Symbol]) -> Option<Verdict> {
        let (ya, yb) = (self.admits(a).is_yes(), self.admits(b).is_yes());
        if !ya || !yb {
            return Some(Verdict::from_bool(ya == yb));
        }
        let succ = |w: &[Symbol]| -> Vec<bool> {
            match w.last() {
                None => self.alive.clone(),
                Some(&s) => (0..self.matrix.len())
                    .map(|u| self.alive[u] && self.matrix[s as usize][u] != 0)
                    .collect(),
            }
        };
        Some(Verdict::from_bool(succ(a) == succ(b)))
    }

    fn source(&self) -> &'static str {
        "sft-matrix"
    }
}
