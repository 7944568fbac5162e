//! Non-crossing chord diagrams on a circle with marked points `0..size`,
//! numbered clockwise. Chords join points of one parity; every cell of the
//! diagram meets the boundary in one point of the other parity.

use std::collections::{HashMap, VecDeque};

use crate::error::Error;

/// Clockwise distance from `from` to `to`.
pub fn offset(size: usize, from: usize, to: usize) -> usize {
    (to + size - from) % size
}

/// Whether `z` lies strictly inside the clockwise run from `a` to `b`.
pub fn strictly_between(size: usize, a: usize, b: usize, z: usize) -> bool {
    let oz = offset(size, a, z);
    oz != 0 && oz < offset(size, a, b)
}

/// Transversal crossing of two chords with four distinct endpoints.
pub fn chords_cross(size: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    strictly_between(size, a, b, c) != strictly_between(size, a, b, d)
}

pub fn other_end((a, b): (usize, usize), x: usize) -> usize {
    if a == x {
        b
    } else {
        a
    }
}

/// One cell, traced along its boundary from the node just before its
/// boundary point to the node just after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellData {
    pub point: usize,
    pub nodes: Vec<usize>,
    pub chords: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Dissection {
    pub size: usize,
    pub chords: Vec<(usize, usize)>,
    /// Chords at each node, clockwise (by increasing offset).
    pub at: Vec<Vec<usize>>,
    pub cells: Vec<CellData>,
    cell_of_point: HashMap<usize, usize>,
    /// Cell occupying the corner clockwise-after a chord at a node.
    dart_cell: HashMap<(usize, usize), usize>,
    /// Cell occupying the corner before the first chord at a node.
    start_cell: HashMap<usize, usize>,
    /// The two cells on either side of each chord.
    pub sides: Vec<(usize, usize)>,
}

impl Dissection {
    /// `parity` is the parity of chord endpoints.
    pub fn new(size: usize, chords: Vec<(usize, usize)>, parity: usize) -> Result<Self, Error> {
        let bad = |m: String| Err(Error::BadDisc(m));
        if size < 2 || !size.is_multiple_of(2) {
            return bad(format!("boundary size {size} is not a positive even number"));
        }
        for (i, &(a, b)) in chords.iter().enumerate() {
            if a >= size || b >= size || a == b || a % 2 != parity || b % 2 != parity {
                return bad(format!("chord {i} ({a}, {b}) has invalid endpoints"));
            }
            for (j, &c) in chords.iter().enumerate().skip(i + 1) {
                if chords_cross(size, (a, b), c) {
                    return bad(format!("chords {i} and {j} cross"));
                }
                if (a.min(b), a.max(b)) == (c.0.min(c.1), c.0.max(c.1)) {
                    return bad(format!("chords {i} and {j} coincide"));
                }
            }
        }
        let mut at = vec![Vec::new(); size];
        for (i, &(a, b)) in chords.iter().enumerate() {
            at[a].push(i);
            at[b].push(i);
        }
        for (x, list) in at.iter_mut().enumerate() {
            list.sort_by_key(|&c| offset(size, x, other_end(chords[c], x)));
        }
        let mut d = Dissection {
            size,
            chords,
            at,
            cells: Vec::new(),
            cell_of_point: HashMap::new(),
            dart_cell: HashMap::new(),
            start_cell: HashMap::new(),
            sides: Vec::new(),
        };
        for p in (0..size).filter(|p| p % 2 != parity) {
            let id = d.cells.len();
            let x = (p + size - 1) % size;
            let mut nodes = vec![x];
            let mut cs = Vec::new();
            let Some(&first) = d.at[x].first() else {
                return bad(format!("point {x} has no chord"));
            };
            d.start_cell.insert(x, id);
            let mut e = first;
            let mut cur = x;
            loop {
                if cs.len() > d.chords.len() * 2 {
                    return bad("cell boundary does not close".into());
                }
                cur = other_end(d.chords[e], cur);
                nodes.push(cur);
                cs.push(e);
                if d.dart_cell.insert((cur, e), id).is_some() {
                    return bad(format!("corner at {cur} lies in two cells"));
                }
                let k = d.at[cur].iter().position(|&c| c == e).unwrap();
                if k + 1 == d.at[cur].len() {
                    break;
                }
                e = d.at[cur][k + 1];
            }
            if cur != (p + 1) % size {
                return bad(format!("cell of point {p} is not bounded by its neighbours"));
            }
            d.cell_of_point.insert(p, id);
            d.cells.push(CellData { point: p, nodes, chords: cs });
        }
        if d.cells.len() != d.chords.len() + 1 {
            return bad(format!("{} chords cut the disc into {} cells", d.chords.len(), d.cells.len()));
        }
        let mut sides = Vec::with_capacity(d.chords.len());
        for (i, &(a, _)) in d.chords.iter().enumerate() {
            let after = d.dart_cell[&(a, i)];
            let k = d.at[a].iter().position(|&c| c == i).unwrap();
            let before = if k == 0 { d.start_cell[&a] } else { d.dart_cell[&(a, d.at[a][k - 1])] };
            sides.push((before, after));
        }
        d.sides = sides;
        Ok(d)
    }

    pub fn cell_of_point(&self, p: usize) -> usize {
        self.cell_of_point[&p]
    }

    /// Cell at node `x` in the corner containing direction towards `y`.
    pub fn corner_cell(&self, x: usize, y: usize) -> usize {
        let o = offset(self.size, x, y);
        let before = self.at[x]
            .iter().rfind(|&&c| offset(self.size, x, other_end(self.chords[c], x)) < o);
        match before {
            Some(&c) => self.dart_cell[&(x, c)],
            None => self.start_cell[&x],
        }
    }

    pub fn dart_cell(&self, node: usize, chord: usize) -> usize {
        self.dart_cell[&(node, chord)]
    }

    /// Chords crossed on the way from cell `a` to cell `b`, in order.
    pub fn dual_path(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.cells.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(c) = queue.pop_front() {
            if c == b {
                break;
            }
            for &e in &self.cells[c].chords {
                let (s, t) = self.sides[e];
                let next = if s == c { t } else { s };
                if !seen[next] {
                    seen[next] = true;
                    prev[next] = Some((c, e));
                    queue.push_back(next);
                }
            }
        }
        let mut path = Vec::new();
        let mut c = b;
        while let Some((p, e)) = prev[c] {
            path.push(e);
            c = p;
        }
        path.reverse();
        path
    }

    /// Whether two chords are consecutive around a shared node; returns it.
    pub fn adjacent_at(&self, e: usize, f: usize) -> Option<usize> {
        let (a, b) = self.chords[e];
        [a, b].into_iter().find(|&x| {
            let list = &self.at[x];
            let (Some(i), Some(j)) = (list.iter().position(|&c| c == e), list.iter().position(|&c| c == f)) else {
                return false;
            };
            i.abs_diff(j) == 1
        })
    }

    /// Index of `chord` in the clockwise order at `node`.
    pub fn rank_at(&self, node: usize, chord: usize) -> Option<usize> {
        self.at[node].iter().position(|&c| c == chord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_and_betweenness() {
        assert!(chords_cross(8, (1, 5), (3, 7)));
        assert!(!chords_cross(8, (1, 5), (5, 7)));
        assert!(!chords_cross(8, (1, 3), (5, 7)));
        assert!(strictly_between(8, 6, 2, 0));
        assert!(!strictly_between(8, 2, 6, 0));
    }

    #[test]
    fn fan_cells() {
        // Three chords out of point 0 on eight points.
        let d = Dissection::new(8, vec![(0, 2), (0, 4), (0, 6)], 0).unwrap();
        assert_eq!(d.cells.len(), 4);
        assert_eq!(d.at[0], vec![0, 1, 2]);
        assert_eq!(d.cells[1].nodes, vec![2, 0, 4]);
        assert_eq!(d.dual_path(d.cell_of_point(1), d.cell_of_point(7)), vec![0, 1, 2]);
        assert_eq!(d.adjacent_at(0, 1), Some(0));
        assert_eq!(d.adjacent_at(0, 2), None);
    }

    #[test]
    fn rejects_crossings() {
        assert!(Dissection::new(8, vec![(0, 4), (2, 6)], 0).is_err());
        assert!(Dissection::new(8, vec![(0, 2)], 0).is_err());
    }
}
