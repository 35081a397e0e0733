//! Exact rational polytope volumes by vertex enumeration and recursive
//! stellar triangulation.
//!
//! Dimensions here are ≤ 4 and systems have ≤ 8 rows, so the combinatorial
//! approach (solve every maximal square subsystem, filter feasible, dedup)
//! is entirely adequate. All arithmetic is exact.

use crate::exact::{rat_int, Rational};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope is unbounded")]
    Unbounded,
}

/// A polytope {t : a·t ≤ β for every row}; rows include any nonnegativity
/// constraints explicitly.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub rows: Vec<(Vec<Rational>, Rational)>,
}

impl Polytope {
    /// Rows plus t_k ≥ 0 for every coordinate.
    pub fn with_nonneg(dim: usize, rows: Vec<(Vec<i64>, i64)>) -> Polytope {
        let mut all: Vec<(Vec<Rational>, Rational)> = rows
            .into_iter()
            .map(|(a, b)| {
                (a.into_iter().map(|v| rat_int(v as i128)).collect(), rat_int(b as i128))
            })
            .collect();
        for k in 0..dim {
            let mut a = vec![Rational::zero(); dim];
            a[k] = -Rational::one();
            all.push((a, Rational::zero()));
        }
        Polytope { dim, rows: all }
    }

    /// Applies t = U·s for an integer matrix U (the new system is in s).
    pub fn transformed(&self, u: &[Vec<i64>]) -> Polytope {
        let rows = self
            .rows
            .iter()
            .map(|(a, b)| {
                let na: Vec<Rational> = (0..self.dim)
                    .map(|j| {
                        (0..self.dim)
                            .map(|i| a[i].clone() * rat_int(u[i][j] as i128))
                            .sum::<Rational>()
                    })
                    .collect();
                (na, b.clone())
            })
            .collect();
        Polytope { dim: self.dim, rows }
    }

    fn satisfied(&self, t: &[Rational]) -> bool {
        self.rows.iter().all(|(a, b)| {
            a.iter().zip(t).map(|(ai, ti)| ai * ti).sum::<Rational>() <= *b
        })
    }

    /// All vertices: feasible solutions of maximal-rank row subsystems.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let d = self.dim;
        let n = self.rows.len();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            if let Some(sol) = solve_square(
                &idx.iter().map(|&i| self.rows[i].0.clone()).collect::<Vec<_>>(),
                &idx.iter().map(|&i| self.rows[i].1.clone()).collect::<Vec<_>>(),
            ) {
                if self.satisfied(&sol) && !out.contains(&sol) {
                    out.push(sol);
                }
            }
            // next d-combination of row indices
            let mut k = d;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] != k + n - d {
                    idx[k] += 1;
                    for j in k + 1..d {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Whether the recession cone {A·t ≤ 0} is trivial. Tested by clipping
    /// the cone to the unit box: every vertex of the clipped cone must be 0.
    pub fn is_bounded(&self) -> bool {
        let mut rows: Vec<(Vec<Rational>, Rational)> =
            self.rows.iter().map(|(a, _)| (a.clone(), Rational::zero())).collect();
        for k in 0..self.dim {
            let mut up = vec![Rational::zero(); self.dim];
            up[k] = Rational::one();
            rows.push((up.clone(), Rational::one()));
            let mut down = up;
            down[k] = -Rational::one();
            rows.push((down, Rational::one()));
        }
        let cone = Polytope { dim: self.dim, rows };
        cone.vertices().iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// Exact Euclidean volume.
    pub fn volume(&self) -> Result<Rational, PolytopeError> {
        if !self.is_bounded() {
            return Err(PolytopeError::Unbounded);
        }
        let verts = self.vertices();
        if verts.len() <= self.dim {
            return Ok(Rational::zero());
        }
        let mut total = Rational::zero();
        let mut factorial = Rational::one();
        for k in 1..=self.dim {
            factorial *= rat_int(k as i128);
        }
        for simplex in triangulate(self, &verts, self.dim) {
            let apex = &simplex[0];
            let mat: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|v| v.iter().zip(apex).map(|(a, b)| a - b).collect())
                .collect();
            total += determinant(&mat).abs();
        }
        Ok(total / factorial)
    }
}

/// Stellar triangulation: cone the smallest vertex over triangulations of
/// the facets avoiding it; facets are identified by their active rows.
fn triangulate(
    p: &Polytope,
    verts: &[Vec<Rational>],
    dim: usize,
) -> Vec<Vec<Vec<Rational>>> {
    if verts.is_empty() {
        return Vec::new();
    }
    if verts.len() == dim + 1 {
        return vec![verts.to_vec()];
    }
    let apex = verts.iter().min().unwrap().clone();
    let mut out = Vec::new();
    let mut seen_faces: Vec<Vec<usize>> = Vec::new();
    for (a, b) in &p.rows {
        let on_face: Vec<usize> = (0..verts.len())
            .filter(|&i| {
                a.iter().zip(&verts[i]).map(|(ai, ti)| ai * ti).sum::<Rational>() == *b
            })
            .collect();
        if on_face.len() < dim || on_face.iter().any(|&i| verts[i] == apex) {
            continue;
        }
        if seen_faces.contains(&on_face) {
            continue;
        }
        seen_faces.push(on_face.clone());
        let face_verts: Vec<Vec<Rational>> = on_face.iter().map(|&i| verts[i].clone()).collect();
        for sub in triangulate(p, &face_verts, dim - 1) {
            let mut simplex = vec![apex.clone()];
            // a (dim−1)-simplex has dim vertices; take the first dim of the
            // sub-simplex (sub has dim vertices by induction)
            simplex.extend(sub);
            out.push(simplex);
        }
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].clone();
        for r in col + 1..n {
            let f = &a[r][col] / &inv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Solves a d×d exact linear system; `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}
