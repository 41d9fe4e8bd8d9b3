//! Lex-min test for a fully colored vertex prefix under vertex
//! permutations within classes and color permutations within classes.
//!
//! Edges are compared in the engine's order: `(0,1), (0,2), (1,2), (0,3)..`,
//! so fixing the image of vertices `0..=j` fixes a prefix of the sequence.

use crate::coloring::Color;
use crate::graph::bits;

const UNMAPPED: Color = Color::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Smaller,
    NotSmaller,
    GaveUp,
}

pub(crate) struct Canon<'a> {
    size: usize,
    // mat[a * size + b]
    mat: &'a [Color],
    vertex_mask: &'a [u64],
    vertex_class: &'a [usize],
    color_class: &'a [usize],
    low: u64,
    perm: Vec<usize>,
    sigma: Vec<Color>,
    sigma_used: u64,
    steps: u64,
    limit: u64,
}

impl<'a> Canon<'a> {
    /// `vertex_mask[c]` holds the vertices of class `c`.
    pub(crate) fn new(
        size: usize,
        mat: &'a [Color],
        vertex_mask: &'a [u64],
        vertex_class: &'a [usize],
        color_class: &'a [usize],
        limit: u64,
    ) -> Self {
        Self {
            size,
            mat,
            vertex_mask,
            vertex_class,
            color_class,
            low: crate::coloring::full_mask(size),
            perm: vec![0; size],
            sigma: vec![UNMAPPED; color_class.len()],
            sigma_used: 0,
            steps: 0,
            limit,
        }
    }

    /// False iff some relabeling gives a strictly smaller sequence. Gives
    /// up (returns true) after `limit` steps.
    pub(crate) fn is_canonical(mut self) -> bool {
        self.search(0, 0) != Verdict::Smaller
    }

    fn map(&mut self, c: Color, undo: &mut Vec<Color>) -> Color {
        let m = self.sigma[c as usize];
        if m != UNMAPPED {
            return m;
        }
        let class = self.color_class[c as usize];
        let target = (0..self.color_class.len())
            .find(|&d| self.color_class[d] == class && self.sigma_used & (1 << d) == 0)
            .expect("class has a free color") as Color;
        self.sigma[c as usize] = target;
        self.sigma_used |= 1 << target;
        undo.push(c);
        target
    }

    fn release(&mut self, undo: &[Color]) {
        for &c in undo {
            self.sigma_used &= !(1 << self.sigma[c as usize]);
            self.sigma[c as usize] = UNMAPPED;
        }
    }

    fn search(&mut self, j: usize, used: u64) -> Verdict {
        if j == self.size {
            return Verdict::NotSmaller;
        }
        let pool = self.vertex_mask[self.vertex_class[j]] & self.low & !used;
        let mut undo = Vec::new();
        for cand in bits(pool) {
            self.steps += 1;
            if self.steps > self.limit {
                return Verdict::GaveUp;
            }
            self.perm[j] = cand;
            undo.clear();
            let mut order = std::cmp::Ordering::Equal;
            for a in 0..j {
                let orig = self.mat[self.perm[a] * self.size + cand];
                let image = self.map(orig, &mut undo);
                order = image.cmp(&self.mat[a * self.size + j]);
                if order.is_ne() {
                    break;
                }
            }
            let verdict = match order {
                std::cmp::Ordering::Less => Verdict::Smaller,
                std::cmp::Ordering::Greater => Verdict::NotSmaller,
                std::cmp::Ordering::Equal => self.search(j + 1, used | (1 << cand)),
            };
            self.release(&undo);
            match verdict {
                Verdict::NotSmaller => {}
                other => return other,
            }
        }
        Verdict::NotSmaller
    }
}
