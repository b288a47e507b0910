use super::{GraphProvider, VertexKey};

/// The hexagonal (honeycomb) lattice in brick-wall coordinates: `(x, y)` is
/// joined to `(x ± 1, y)` and to `(x, y + 1)` when `x + y` is even, to
/// `(x, y - 1)` otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct HexLattice;

impl GraphProvider for HexLattice {
    fn family(&self) -> &str {
        "hex"
    }

    fn origin(&self) -> VertexKey {
        VertexKey::Site(vec![0, 0])
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<VertexKey> {
        let VertexKey::Site(c) = v else {
            return Vec::new();
        };
        let (x, y) = (c[0], c[1]);
        let vertical = if (x + y).rem_euclid(2) == 0 { y + 1 } else { y - 1 };
        vec![
            VertexKey::Site(vec![x + 1, y]),
            VertexKey::Site(vec![x, vertical]),
            VertexKey::Site(vec![x - 1, y]),
        ]
    }

    fn degree_bound(&self) -> usize {
        3
    }
}

/// The `d`-regular tree, realized as the Cayley graph of the free product of
/// `d` copies of `Z_2`: vertices are words with no letter repeated twice in a
/// row, and slot `c` either appends `c` or cancels a trailing `c`.
#[derive(Debug, Clone)]
pub struct RegularTree {
    degree: u8,
    tag: String,
}

impl RegularTree {
    pub fn new(degree: u8) -> Self {
        assert!(degree >= 2, "regular tree degree must be at least 2");
        Self { degree, tag: format!("tree:{degree}") }
    }
}

impl GraphProvider for RegularTree {
    fn family(&self) -> &str {
        &self.tag
    }

    fn origin(&self) -> VertexKey {
        VertexKey::Word(Vec::new())
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<VertexKey> {
        let VertexKey::Word(w) = v else {
            return Vec::new();
        };
        (0..self.degree)
            .map(|c| {
                let mut u = w.clone();
                if u.last() == Some(&c) {
                    u.pop();
                } else {
                    u.push(c);
                }
                VertexKey::Word(u)
            })
            .collect()
    }

    fn degree_bound(&self) -> usize {
        self.degree as usize
    }
}
