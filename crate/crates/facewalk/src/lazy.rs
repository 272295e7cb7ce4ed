//! Lazy expansion of recursively defined listings.
//!
//! The listing at level `l + 1` is the concatenation of the insertion
//! sequences of the faces at level `l`, each expanded when first needed. Only
//! one insertion sequence per level is held in memory.

pub trait Expansion {
    type Face: Clone;

    /// Faces of the base level, in order.
    fn base(&self) -> Vec<Self::Face>;

    /// Insertion sequence of `parent`, the `index`-th face (0-based) of
    /// level `level - 1`.
    fn expand(&self, level: usize, parent: &Self::Face, index: usize) -> Vec<Self::Face>;
}

pub struct LazyListing<E: Expansion> {
    exp: E,
    base: Vec<E::Face>,
    base_pos: usize,
    // (current insertion sequence, position in it, number of parents consumed)
    levels: Vec<(Vec<E::Face>, usize, usize)>,
}

impl<E: Expansion> LazyListing<E> {
    /// Listing at level `depth` (0 is the base).
    pub fn new(exp: E, depth: usize) -> Self {
        let base = exp.base();
        LazyListing { exp, base, base_pos: 0, levels: (0..depth).map(|_| (Vec::new(), 0, 0)).collect() }
    }

    fn next_at(&mut self, level: usize) -> Option<E::Face> {
        if level == 0 {
            let f = self.base.get(self.base_pos).cloned();
            self.base_pos += 1;
            return f;
        }
        loop {
            let (seq, pos, _) = &mut self.levels[level - 1];
            if *pos < seq.len() {
                *pos += 1;
                return Some(seq[*pos - 1].clone());
            }
            let parent = self.next_at(level - 1)?;
            let index = self.levels[level - 1].2;
            let seq = self.exp.expand(level, &parent, index);
            self.levels[level - 1] = (seq, 0, index + 1);
        }
    }
}

impl<E: Expansion> Iterator for LazyListing<E> {
    type Item = E::Face;

    fn next(&mut self) -> Option<E::Face> {
        let depth = self.levels.len();
        self.next_at(depth)
    }
}
