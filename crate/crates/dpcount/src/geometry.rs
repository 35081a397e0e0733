//! The Picard lattice of the minimal desingularisation: divisor classes of
//! the nine Cox-ring generators, the intersection form, the configuration of
//! negative curves, boundary divisors, and the exponent tables of the
//! anticanonical and log-anticanonical monomials.
//!
//! Everything here is immutable transcription of geometric data; the runtime
//! consistency checks in `verify` recompute the derived parts (adjacency,
//! degrees, ranks) from the class vectors.

/// A divisor class in the basis (l₀, …, l₅) of the Picard lattice;
/// the intersection form is diag(+1, −1, −1, −1, −1, −1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PicClass(pub [i64; 6]);

impl PicClass {
    pub const ZERO: PicClass = PicClass([0; 6]);

    pub fn add(&self, other: &PicClass) -> PicClass {
        PicClass(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn scale(&self, m: i64) -> PicClass {
        PicClass(self.0.map(|v| v * m))
    }
}

/// Intersection pairing of two classes.
pub fn pairing(a: &PicClass, b: &PicClass) -> i64 {
    let mut s = a.0[0] * b.0[0];
    for k in 1..6 {
        s -= a.0[k] * b.0[k];
    }
    s
}

/// The classes [E₁], …, [E₉] of the Cox-ring generators.
pub const E_CLASSES: [PicClass; 9] = [
    PicClass([0, 1, 0, 0, -1, 0]),   // E1 = l1 − l4
    PicClass([1, -1, -1, -1, 0, 0]), // E2 = l0 − l1 − l2 − l3
    PicClass([0, 0, 1, 0, 0, -1]),   // E3 = l2 − l5
    PicClass([0, 0, 0, 0, 1, 0]),    // E4 = l4
    PicClass([0, 0, 0, 1, 0, 0]),    // E5 = l3
    PicClass([0, 0, 0, 0, 0, 1]),    // E6 = l5
    PicClass([1, -1, 0, 0, -1, 0]),  // E7 = l0 − l1 − l4
    PicClass([1, 0, -1, 0, 0, -1]),  // E8 = l0 − l2 − l5
    PicClass([1, 0, 0, -1, 0, 0]),   // E9 = l0 − l3
];

/// The anticanonical class 3l₀ − l₁ − ⋯ − l₅.
pub const ANTICANONICAL: PicClass = PicClass([3, -1, -1, -1, -1, -1]);

/// Edges of the configuration of E₁, …, E₉ (1-based index pairs, j < k).
pub const EDGES: [(usize, usize); 11] = [
    (1, 2),
    (1, 4),
    (2, 3),
    (2, 5),
    (3, 6),
    (4, 7),
    (5, 9),
    (6, 8),
    (7, 8),
    (7, 9),
    (8, 9),
];

/// Exponent matrix of the five anticanonical sections defining the map to P⁴.
pub const PSI_EXPONENTS: [[u32; 9]; 5] = [
    [2, 2, 1, 2, 1, 0, 1, 0, 0], // η1²η2²η3η4²η5η7
    [1, 2, 2, 0, 1, 2, 0, 1, 0], // η1η2²η3²η5η6²η8
    [2, 3, 2, 1, 2, 1, 0, 0, 0], // η1²η2³η3²η4η5²η6
    [1, 1, 1, 1, 0, 1, 1, 1, 0], // η1η2η3η4η6η7η8
    [0, 0, 0, 0, 0, 0, 1, 1, 1], // η7η8η9
];

/// Exponent matrices of the height monomials M₁ (four) and M₂ (three).
pub const M1_EXPONENTS: [[u32; 9]; 4] = [
    [1, 1, 0, 2, 1, 0, 1, 0, 0],
    [0, 1, 1, 0, 1, 2, 0, 1, 0],
    [1, 2, 1, 1, 2, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 1, 0],
];

pub const M2_EXPONENTS: [[u32; 9]; 3] = [
    [1, 1, 0, 1, 1, 0, 1, 0, 0],
    [1, 2, 1, 0, 2, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 1, 0],
];

/// Exponent matrix of the nine irrelevant-ideal monomials: the product of
/// all generators outside each maximal pairwise-connected vertex set.
pub const IRRELEVANT_EXPONENTS: [[u32; 9]; 9] = [
    [1, 1, 1, 1, 1, 1, 0, 0, 0], // complement of {7,8,9}
    [0, 0, 1, 1, 1, 1, 1, 1, 1], // complement of {1,2}
    [0, 1, 1, 0, 1, 1, 1, 1, 1], // complement of {1,4}
    [1, 0, 0, 1, 1, 1, 1, 1, 1], // complement of {2,3}
    [1, 0, 1, 1, 0, 1, 1, 1, 1], // complement of {2,5}
    [1, 1, 0, 1, 1, 0, 1, 1, 1], // complement of {3,6}
    [1, 1, 1, 0, 1, 1, 0, 1, 1], // complement of {4,7}
    [1, 1, 1, 1, 0, 1, 1, 1, 0], // complement of {5,9}
    [1, 1, 1, 1, 1, 0, 1, 0, 1], // complement of {6,8}
];

/// The two boundaries with countable asymptotics: the divisor above the
/// singularity, and the strict transform chain above one line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryDivisor {
    /// D₁ = E₁ + E₂ + E₃
    AboveSingularity,
    /// D₂ = E₁ + E₂ + E₃ + E₄
    AboveLine,
}

impl BoundaryDivisor {
    pub fn index(&self) -> usize {
        match self {
            BoundaryDivisor::AboveSingularity => 1,
            BoundaryDivisor::AboveLine => 2,
        }
    }

    /// 1-based indices of the components E_j ⊂ D_i.
    pub fn components(&self) -> &'static [usize] {
        match self {
            BoundaryDivisor::AboveSingularity => &[1, 2, 3],
            BoundaryDivisor::AboveLine => &[1, 2, 3, 4],
        }
    }

    /// The non-boundary indices J_i ⊆ {1, …, 7} looped over first.
    pub fn free_indices(&self) -> &'static [usize] {
        match self {
            BoundaryDivisor::AboveSingularity => &[4, 5, 6, 7],
            BoundaryDivisor::AboveLine => &[5, 6, 7],
        }
    }

    /// Height-monomial exponents for this boundary.
    pub fn height_monomials(&self) -> &'static [[u32; 9]] {
        match self {
            BoundaryDivisor::AboveSingularity => &M1_EXPONENTS,
            BoundaryDivisor::AboveLine => &M2_EXPONENTS,
        }
    }

    /// ω(D_i)^∨ = −(K + D_i).
    pub fn log_anticanonical(&self) -> PicClass {
        let mut c = ANTICANONICAL;
        for &j in self.components() {
            c = c.add(&E_CLASSES[j - 1].scale(-1));
        }
        c
    }

    /// rk Pic(Ũ_i) = 6 − #D_i.
    pub fn picard_rank(&self) -> u32 {
        6 - self.components().len() as u32
    }

    /// Maximal faces of the Clemens complex: edges between boundary
    /// components, derived from the intersection pairing.
    pub fn clemens_max_faces(&self) -> Vec<(usize, usize)> {
        let comps = self.components();
        let mut out = Vec::new();
        for (i, &a) in comps.iter().enumerate() {
            for &b in &comps[i + 1..] {
                if pairing(&E_CLASSES[a - 1], &E_CLASSES[b - 1]) >= 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// dim 𝒞^an + 1: the largest number of boundary components meeting in a
    /// point (the boundary is a chain, so this is the largest clique size).
    pub fn clemens_dim_plus_one(&self) -> u32 {
        let comps = self.components();
        let mut best = 1u32;
        // cliques in a chain have size ≤ 2 unless a triangle exists
        for (i, &a) in comps.iter().enumerate() {
            for &b in &comps[i + 1..] {
                if pairing(&E_CLASSES[a - 1], &E_CLASSES[b - 1]) >= 1 {
                    best = best.max(2);
                    for &c in comps {
                        if c != a
                            && c != b
                            && pairing(&E_CLASSES[a - 1], &E_CLASSES[c - 1]) >= 1
                            && pairing(&E_CLASSES[b - 1], &E_CLASSES[c - 1]) >= 1
                        {
                            best = best.max(3);
                        }
                    }
                }
            }
        }
        best
    }

    /// The exponent b_i = rk Pic(Ũ_i) + dim 𝒞^an + 1.
    pub fn log_power(&self) -> u32 {
        self.picard_rank() + self.clemens_dim_plus_one()
    }
}

/// Σ e_j·[E_j] for an exponent vector.
pub fn degree_of_monomial(exponents: &[u32; 9]) -> PicClass {
    let mut c = PicClass::ZERO;
    for (j, &e) in exponents.iter().enumerate() {
        c = c.add(&E_CLASSES[j].scale(e as i64));
    }
    c
}

/// Adjacency computed from the intersection pairing: unordered pairs {j, k}
/// with [E_j]·[E_k] ≥ 1.
pub fn adjacency_from_pairing() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..=9 {
        for k in (j + 1)..=9 {
            if pairing(&E_CLASSES[j - 1], &E_CLASSES[k - 1]) >= 1 {
                out.push((j, k));
            }
        }
    }
    out
}

/// The complement of the adjacency within all 36 pairs: exactly the pairs
/// whose coordinates must generate coprime ideals on the torsor.
pub fn coprimality_pairs() -> Vec<(usize, usize)> {
    let edges = adjacency_from_pairing();
    let mut out = Vec::new();
    for j in 1..=9 {
        for k in (j + 1)..=9 {
            if !edges.contains(&(j, k)) {
                out.push((j, k));
            }
        }
    }
    out
}
