use itertools::Itertools;

/// A permutation σ of `{0..n}` with its sign. Applied to a tuple it gives
/// `(x_{σ(1)}, …, x_{σ(n)})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        let inversions =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| images[i] > images[j]).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some(Permutation { images, sign })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect(), sign: 1 }
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(|p| Permutation::from_images(p).expect("valid permutation")).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }
}
