//! Reflected traversal of nested insertion sequences.
//!
//! A state is split into levels, level 0 changing slowest. At every step the
//! highest level that can still move in its current direction moves once and
//! every level above it reverses direction. Scanning from the top costs
//! `O(levels - m)` when level `m` moves; since level `m` moves a geometrically
//! decreasing fraction of the time in all families here, the cost per step is
//! amortized constant.

pub trait Levels {
    fn levels(&self) -> usize;
    fn can_step(&self, level: usize, forward: bool) -> bool;
    fn step(&mut self, level: usize, forward: bool);
}

#[derive(Clone, Debug)]
pub struct Zigzag<L> {
    pub state: L,
    forward: Vec<bool>,
    started: bool,
    last_work: usize,
}

impl<L: Levels> Zigzag<L> {
    /// `forward[m]` is the initial direction of level `m`.
    pub fn new(state: L, forward: Vec<bool>) -> Self {
        debug_assert_eq!(forward.len(), state.levels());
        Zigzag { state, forward, started: false, last_work: 0 }
    }

    /// Moves to the next state. The first call keeps the initial state.
    /// Returns `false` once every level is stuck.
    pub fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.last_work = 1;
            return true;
        }
        let levels = self.forward.len();
        let mut m = levels;
        while m > 0 {
            m -= 1;
            if self.state.can_step(m, self.forward[m]) {
                self.state.step(m, self.forward[m]);
                for d in &mut self.forward[m + 1..] {
                    *d = !*d;
                }
                self.last_work = levels - m;
                return true;
            }
        }
        self.last_work = levels.max(1);
        false
    }

    /// Number of levels inspected by the last call to [`Zigzag::advance`].
    pub fn last_work(&self) -> usize {
        self.last_work
    }
}
