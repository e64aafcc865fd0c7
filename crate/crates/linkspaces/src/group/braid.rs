//! Free-group words and the Artin action of braid generators, used to state
//! and verify pure-braid relators.

/// Reduced word in a free group on generators 0..n-1; letters are (gen, ±1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord(pub Vec<(usize, i8)>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        FreeWord(vec![(i, 1)])
    }

    pub fn push(&mut self, letter: (usize, i8)) {
        if let Some(&last) = self.0.last() {
            if last.0 == letter.0 && last.1 == -letter.1 {
                self.0.pop();
                return;
            }
        }
        self.0.push(letter);
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&(g, s)| (g, -s)).collect())
    }

    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::identity();
        for &(g, s) in &self.0 {
            let w = if s > 0 {
                images[g].clone()
            } else {
                images[g].inverse()
            };
            for &l in &w.0 {
                out.push(l);
            }
        }
        out
    }
}

/// An endomorphism of the free group F_n, by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAut {
    pub images: Vec<FreeWord>,
}

impl FreeAut {
    pub fn identity(n: usize) -> Self {
        FreeAut {
            images: (0..n).map(FreeWord::gen).collect(),
        }
    }

    /// Artin action of sigma_t (1-based, crossing strands t and t+1):
    /// x_t -> x_t x_{t+1} x_t^-1, x_{t+1} -> x_t.
    pub fn sigma(n: usize, t: usize, inv: bool) -> Self {
        let mut a = FreeAut::identity(n);
        let i = t - 1;
        if !inv {
            let mut w = FreeWord::gen(i);
            w = w.concat(&FreeWord::gen(i + 1));
            w = w.concat(&FreeWord::gen(i).inverse());
            a.images[i] = w;
            a.images[i + 1] = FreeWord::gen(i);
        } else {
            a.images[i] = FreeWord::gen(i + 1);
            let mut w = FreeWord::gen(i + 1).inverse();
            w = w.concat(&FreeWord::gen(i));
            w = w.concat(&FreeWord::gen(i + 1));
            a.images[i + 1] = w;
        }
        a
    }

    /// self after other (composition as functions: (self*other)(x) = self(other(x))).
    pub fn compose(&self, other: &FreeAut) -> FreeAut {
        FreeAut {
            images: other
                .images
                .iter()
                .map(|w| w.substitute(&self.images))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.0 == vec![(i, 1)])
    }
}

/// A braid word: sequence of (strand index t, inverse flag) Artin generators.
pub type BraidWord = Vec<(usize, bool)>;

/// Braid word for the standard pure-braid generator A_{ij} (1-based, i < j):
/// (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1}^-1 ... sigma_{j-1}^-1).
pub fn a_ij_word(i: usize, j: usize) -> BraidWord {
    assert!(i < j);
    let mut w = Vec::new();
    for t in ((i + 1)..j).rev() {
        w.push((t, false));
    }
    w.push((i, false));
    w.push((i, false));
    for t in (i + 1)..j {
        w.push((t, true));
    }
    w
}

/// Evaluates a braid word to its Artin automorphism on F_n.
pub fn artin(n: usize, word: &BraidWord) -> FreeAut {
    let mut acc = FreeAut::identity(n);
    for &(t, inv) in word {
        let s = FreeAut::sigma(n, t, inv);
        acc = s.compose(&acc);
    }
    acc
}

pub fn braid_inverse(w: &BraidWord) -> BraidWord {
    w.iter().rev().map(|&(t, inv)| (t, !inv)).collect()
}

pub fn braid_concat(ws: &[&BraidWord]) -> BraidWord {
    let mut out = Vec::new();
    for w in ws {
        out.extend(w.iter().copied());
    }
    out
}
