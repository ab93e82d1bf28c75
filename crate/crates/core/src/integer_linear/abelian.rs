//! Finitely generated abelian groups given by integer presentations, and
//! homomorphisms between them.
//!
//! A group with `n` generators and relation matrix `R` (`n` rows, one column per
//! relator) is `Z^n / colspan(R)`. Elements are integer column vectors in
//! generator coordinates; a homomorphism is the integer matrix sending source
//! generators to target coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::smith::{integer_kernel, smith_normal_form, Smith};
use crate::error::{Error, Result};

/// Isomorphism invariants: free rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone)]
pub struct FgAbGroup {
    gens: usize,
    rels: IntMatrix,
    smith: Smith,
}

impl PartialEq for FgAbGroup {
    /// Equality of presentations; see [`FgAbGroup::is_isomorphic`] for isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.rels == other.rels
    }
}

impl Eq for FgAbGroup {}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FgAbGroup")
            .field("gens", &self.gens)
            .field("rels", &self.rels)
            .finish()
    }
}

/// A presentation rewritten in Smith form, with the coordinate changes both ways.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub group: FgAbGroup,
    /// Old coordinates to new (`new_gens x old_gens`).
    pub to_new: IntMatrix,
    /// New coordinates to old (`old_gens x new_gens`).
    pub to_old: IntMatrix,
}

impl FgAbGroup {
    pub fn new(gens: usize, rels: IntMatrix) -> Result<Self> {
        if rels.rows() != gens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows but the group has {gens} generators",
                rels.rows()
            )));
        }
        let smith = smith_normal_form(&rels);
        Ok(FgAbGroup { gens, rels, smith })
    }

    pub fn zero() -> Self {
        FgAbGroup::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(rank, IntMatrix::zeros(rank, 0)).unwrap()
    }

    /// `Z/o_1 + ... + Z/o_n`, with `o_i = 0` meaning a copy of `Z`.
    pub fn from_orders(orders: &[i64]) -> Self {
        let n = orders.len();
        let torsion: Vec<usize> = (0..n).filter(|&i| orders[i] != 0).collect();
        let mut rels = IntMatrix::zeros(n, torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            rels[(i, c)] = BigInt::from(orders[i]);
        }
        FgAbGroup::new(n, rels).unwrap()
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.rels
    }

    pub fn invariants(&self) -> Invariants {
        let torsion = self
            .smith
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Invariants {
            free_rank: self.gens - self.smith.rank,
            torsion,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.gens - self.smith.rank
    }

    pub fn is_trivial(&self) -> bool {
        let inv = self.invariants();
        inv.free_rank == 0 && inv.torsion.is_empty()
    }

    /// Cardinality, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        let inv = self.invariants();
        (inv.free_rank == 0).then(|| inv.torsion.iter().product())
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariants() == other.invariants()
    }

    /// Whether the coordinate vector `x` represents the identity element.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.gens, "element has the wrong length");
        let y = self.smith.u.apply(x);
        y.iter().enumerate().all(|(i, yi)| {
            if i < self.smith.rank {
                yi.is_multiple_of(&self.smith.d[(i, i)])
            } else {
                yi.is_zero()
            }
        })
    }

    /// Index of the first column of `m` (in this group's coordinates) that is not zero.
    pub(crate) fn first_nonzero_column(&self, m: &IntMatrix) -> Option<usize> {
        assert_eq!(m.rows(), self.gens);
        (0..m.cols()).find(|&j| !self.is_zero_element(&m.column(j)))
    }

    /// Rewrites the presentation as `Z/d_1 + ... + Z/d_t + Z^r` with `1 < d_1 | ... | d_t`.
    pub fn simplify(&self) -> Simplified {
        let s = &self.smith;
        let keep: Vec<usize> = (0..self.gens)
            .filter(|&i| i >= s.rank || !s.d[(i, i)].is_one())
            .collect();
        let torsion: Vec<usize> = keep.iter().copied().filter(|&i| i < s.rank).collect();
        let mut rels = IntMatrix::zeros(keep.len(), torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            rels[(c, c)] = s.d[(i, i)].clone();
        }
        Simplified {
            group: FgAbGroup::new(keep.len(), rels).unwrap(),
            to_new: s.u.select_rows(&keep),
            to_old: s.u_inv.select_cols(&keep),
        }
    }

    /// True iff the presentation is already `diag(d_1..d_t)` followed by free generators.
    pub fn is_simplified(&self) -> bool {
        let t = self.rels.cols();
        t <= self.gens
            && (0..self.gens).all(|i| {
                (0..t).all(|j| {
                    let x = &self.rels[(i, j)];
                    if i == j {
                        x > &BigInt::one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Reduces each coordinate of an element modulo its cyclic order; only
    /// meaningful on simplified presentations, identity otherwise.
    pub fn reduce_element(&self, x: &mut [BigInt]) {
        if !self.is_simplified() {
            return;
        }
        for (i, xi) in x.iter_mut().enumerate().take(self.rels.cols()) {
            *xi = xi.mod_floor(&self.rels[(i, i)]);
        }
    }

    /// The subgroup generated by the columns of `generators`, as a simplified
    /// group together with its inclusion.
    pub fn subgroup(&self, generators: &IntMatrix) -> Result<Homomorphism> {
        let simple = self.subgroup_presentation(generators)?.simplify();
        Ok(Homomorphism {
            source: simple.group,
            target: self.clone(),
            matrix: generators * &simple.to_old,
        })
    }

    /// The subgroup generated by the columns of `generators`, presented on
    /// exactly those generators.
    pub fn subgroup_presentation(&self, generators: &IntMatrix) -> Result<FgAbGroup> {
        if generators.rows() != self.gens {
            return Err(Error::Dimension(format!(
                "subgroup generators have {} coordinates, the group has {} generators",
                generators.rows(),
                self.gens
            )));
        }
        let s = generators.cols();
        // Relations among the generators: z with S z in colspan(R).
        let block = IntMatrix::hstack(self.gens, &[generators, &-&self.rels]);
        let kernel = integer_kernel(&block);
        let top: Vec<usize> = (0..s).collect();
        FgAbGroup::new(s, kernel.select_rows(&top))
    }

    /// `A / <generators>`, with the projection given by the identity on generators.
    pub fn quotient(&self, generators: &IntMatrix) -> Result<Homomorphism> {
        if generators.rows() != self.gens {
            return Err(Error::Dimension(format!(
                "quotient generators have {} coordinates, the group has {} generators",
                generators.rows(),
                self.gens
            )));
        }
        let rels = IntMatrix::hstack(self.gens, &[&self.rels, generators]);
        let q = FgAbGroup::new(self.gens, rels)?;
        Ok(Homomorphism {
            source: self.clone(),
            target: q,
            matrix: IntMatrix::identity(self.gens),
        })
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariants())
    }
}

/// A homomorphism `source -> target`; `matrix` is `target.gens x source.gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl Homomorphism {
    /// Checks shape and that every source relator maps to zero in the target.
    ///
    /// On failure the error names the first offending relator by index.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens,
                source.gens
            )));
        }
        let images = &matrix * &source.rels;
        if let Some(bad) = target.first_nonzero_column(&images) {
            return Err(Error::IllDefined {
                map: "homomorphism".into(),
                generator: bad,
            });
        }
        Ok(Homomorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.gens),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.gens, source.gens),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.target != self.source {
            return Err(Error::Dimension(
                "composition of maps with mismatched presentations".into(),
            ));
        }
        Ok(Homomorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    /// Same source and target presentations, and equal as maps modulo target relations.
    pub fn equals(&self, other: &Homomorphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .target
                .first_nonzero_column(&(&self.matrix - &other.matrix))
                .is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.target.first_nonzero_column(&self.matrix).is_none()
    }

    /// The kernel as a simplified group with its inclusion into the source.
    pub fn kernel(&self) -> Homomorphism {
        // x is in the kernel iff F x = R_B y for some y.
        let block = IntMatrix::hstack(
            self.target.gens,
            &[&self.matrix, &-&self.target.rels],
        );
        let solutions = integer_kernel(&block);
        let top: Vec<usize> = (0..self.source.gens).collect();
        let generators = solutions.select_rows(&top);
        self.source
            .subgroup(&generators)
            .expect("kernel generators have source coordinates")
    }

    /// The image as a simplified group with its inclusion into the target.
    pub fn image(&self) -> Homomorphism {
        self.target
            .subgroup(&self.matrix)
            .expect("image generators have target coordinates")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().source.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.target
            .quotient(&self.matrix)
            .expect("image generators have target coordinates")
            .target
            .is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Rewrites the map along new presentations of its source and target.
    ///
    /// `source_to_old` carries new source coordinates to old ones and
    /// `target_to_new` old target coordinates to new ones.
    pub(crate) fn transport(
        &self,
        new_source: &FgAbGroup,
        source_to_old: &IntMatrix,
        new_target: &FgAbGroup,
        target_to_new: &IntMatrix,
    ) -> Homomorphism {
        let mut matrix = &(target_to_new * &self.matrix) * source_to_old;
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            new_target.reduce_element(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                matrix[(i, j)] = x;
            }
        }
        Homomorphism {
            source: new_source.clone(),
            target: new_target.clone(),
            matrix,
        }
    }

    /// Negates source generator `j`: the matrix column flips sign.
    pub(crate) fn flip_source_generator(&mut self, j: usize) {
        self.matrix.negate_col(j);
    }

    /// Negates target generator `i`: the matrix row flips sign.
    pub(crate) fn flip_target_generator(&mut self, i: usize) {
        self.matrix.negate_row(i);
        let mut row: Vec<BigInt> = self.matrix.row(i).to_vec();
        if self.target.is_simplified() && i < self.target.rels.cols() {
            let d = &self.target.rels[(i, i)];
            for x in row.iter_mut() {
                *x = x.mod_floor(d);
            }
            for (j, x) in row.into_iter().enumerate() {
                self.matrix[(i, j)] = x;
            }
        }
    }

    pub(crate) fn first_nonzero_in_column(&self, j: usize) -> Option<BigInt> {
        self.matrix.column(j).into_iter().find(|x| !x.is_zero())
    }
}
