//! Small exact linear algebra over [`Scalar`]: row echelon spans with
//! optional tracking of combination coefficients. Everything is dense; the
//! dimensions in this crate stay tiny.

use crate::scalar::Scalar;

/// An incrementally built reduced row echelon span.
pub(crate) struct Echelon {
    width: usize,
    track: bool,
    /// `(row, combo)`: row is reduced with pivot normalized to 1, combo
    /// expresses it in terms of the successfully inserted vectors.
    rows: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, track: false, rows: Vec::new(), inserted: 0 }
    }

    /// Track combination coefficients; `solve` becomes available.
    pub fn tracking(width: usize) -> Self {
        Echelon { width, track: true, rows: Vec::new(), inserted: 0 }
    }

    #[allow(dead_code)] // exercised by the span-comparison test oracles
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_of(row: &[Scalar]) -> Option<usize> {
        row.iter().position(|c| !c.is_zero())
    }

    /// Reduce `v` against the span; `combo` (if tracking) accumulates the
    /// coefficients of the inserted vectors that were subtracted.
    fn reduce_mut(&self, v: &mut [Scalar], combo: Option<&mut Vec<Scalar>>) {
        let mut combo = combo;
        for (row, rcombo) in &self.rows {
            let p = Self::pivot_of(row).expect("stored rows are nonzero");
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in 0..self.width {
                let t = &factor * &row[j];
                v[j] -= &t;
            }
            if let Some(c) = combo.as_deref_mut() {
                for (ci, ri) in c.iter_mut().zip(rcombo) {
                    let t = &factor * ri;
                    *ci += &t;
                }
            }
        }
    }

    /// Insert a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width);
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut combo = if self.track { vec![Scalar::zero(); idx + 1] } else { Vec::new() };
        if self.track {
            combo[idx] = Scalar::one();
            for (_, c) in &mut self.rows {
                c.push(Scalar::zero());
            }
        }
        {
            let combo_ref = if self.track { Some(&mut combo) } else { None };
            self.reduce_mut(&mut v, combo_ref);
        }
        let Some(p) = Self::pivot_of(&v) else { return false };
        // normalize pivot to 1
        let inv = v[p].inv().expect("nonzero pivot");
        for c in v.iter_mut() {
            let t = &*c * &inv;
            *c = t;
        }
        for c in combo.iter_mut() {
            let t = &*c * &inv;
            *c = t;
        }
        // back-substitute into earlier rows to keep the span fully reduced
        let mut updates: Vec<(usize, Scalar)> = Vec::new();
        for (k, (row, _)) in self.rows.iter().enumerate() {
            if !row[p].is_zero() {
                updates.push((k, row[p].clone()));
            }
        }
        for (k, factor) in updates {
            for j in 0..self.width {
                let t = &factor * &v[j];
                self.rows[k].0[j] -= &t;
            }
            if self.track {
                for (ci, vi) in combo.iter().enumerate() {
                    let t = &factor * vi;
                    self.rows[k].1[ci] -= &t;
                }
            }
        }
        // keep rows sorted by pivot column for a canonical basis
        let pos = self
            .rows
            .iter()
            .position(|(row, _)| Self::pivot_of(row).expect("nonzero") > p)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, (v, combo));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        self.reduce_mut(&mut v, None);
        v.iter().all(Scalar::is_zero)
    }

    /// Express `v` as a combination of the *inserted* vectors, when possible.
    /// The returned coefficients are indexed by insertion order.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert!(self.track, "solve requires a tracking span");
        let mut v = v.to_vec();
        let mut combo = vec![Scalar::zero(); self.inserted];
        self.reduce_mut(&mut v, Some(&mut combo));
        if v.iter().all(Scalar::is_zero) {
            Some(combo)
        } else {
            None
        }
    }

    /// The reduced rows, sorted by pivot column.
    pub fn basis(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(|(r, _)| r.as_slice())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(r, _)| Self::pivot_of(r).expect("nonzero")).collect()
    }

    /// Reduce `v` and return the remainder (its support avoids all pivots).
    pub fn remainder(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        self.reduce_mut(&mut v, None);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&n| Scalar::from_int(n)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(sv(&[1, 2, 0])));
        assert!(e.insert(sv(&[0, 1, 1])));
        assert!(!e.insert(sv(&[1, 3, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[2, 5, 1])));
        assert!(!e.contains(&sv(&[0, 0, 1])));
    }

    #[test]
    fn solve_tracks_insertion_coefficients() {
        let mut e = Echelon::tracking(3);
        e.insert(sv(&[1, 1, 0]));
        e.insert(sv(&[0, 2, 2]));
        let c = e.solve(&sv(&[2, 4, 2])).unwrap();
        assert_eq!(c, sv(&[2, 1]));
        assert!(e.solve(&sv(&[0, 0, 1])).is_none());
    }
}
