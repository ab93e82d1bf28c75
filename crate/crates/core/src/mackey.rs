//! `C_p` Mackey functors over finitely generated abelian groups.
//!
//! A `C_p` Mackey functor is a diagram
//!
//! ```text
//!        res
//!   top ----> bottom  (gamma acting on bottom)
//!       <----
//!        tr
//! ```
//!
//! with `gamma^p = 1`, `gamma res = res`, `tr gamma = tr` and `res tr = 1 + gamma + ... + gamma^{p-1}`.
//! Both levels are arbitrary finitely generated abelian groups, so `P^0` and the
//! sub-functor generated by the underlying level are computed exactly through
//! kernels, images and quotients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::require_odd_prime;
use crate::error::{Error, Result};
use crate::integer_linear::{FgAbGroup, Homomorphism, IntMatrix, JsonRows};

/// One of the four structure identities of a `C_p` Mackey functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `gamma^p = id`
    GammaOrder,
    /// `gamma o res = res`
    RestrictionFixed,
    /// `tr o gamma = tr`
    TransferInvariant,
    /// `res o tr = sum_i gamma^i`
    DoubleCoset,
}

impl Axiom {
    pub fn describe(&self) -> &'static str {
        match self {
            Axiom::GammaOrder => "gamma^p ≠ id",
            Axiom::RestrictionFixed => "gamma∘res ≠ res",
            Axiom::TransferInvariant => "tr∘gamma ≠ tr",
            Axiom::DoubleCoset => "res∘tr ≠ norm",
        }
    }

    /// JSON path of the map whose columns are tested.
    fn path(&self) -> &'static str {
        match self {
            Axiom::GammaOrder => "$.gamma",
            Axiom::RestrictionFixed => "$.res",
            Axiom::TransferInvariant | Axiom::DoubleCoset => "$.tr",
        }
    }
}

/// A failed axiom, reported at the first source generator where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub generator: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}[generator {}]",
            self.axiom.describe(),
            self.axiom.path(),
            self.generator
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpMackey {
    p: u64,
    bottom: FgAbGroup,
    top: FgAbGroup,
    gamma: Homomorphism,
    res: Homomorphism,
    tr: Homomorphism,
}

fn named(map: &str, err: Error) -> Error {
    match err {
        Error::IllDefined { generator, .. } => Error::IllDefined {
            map: format!("$.{map}"),
            generator,
        },
        Error::Dimension(msg) => Error::Dimension(format!("$.{map}: {msg}")),
        other => other,
    }
}

/// Pair of level maps between two Mackey functors.
#[derive(Clone, Debug)]
pub struct MackeyMorphism {
    pub top: Homomorphism,
    pub bottom: Homomorphism,
}

impl MackeyMorphism {
    /// Whether the level maps commute with restriction, transfer and `gamma`.
    pub fn is_natural(&self, source: &CpMackey, target: &CpMackey) -> bool {
        let eq = |a: Result<Homomorphism>, b: Result<Homomorphism>| match (a, b) {
            (Ok(a), Ok(b)) => a.equals(&b),
            _ => false,
        };
        eq(self.bottom.compose(&source.res), target.res.compose(&self.top))
            && eq(self.top.compose(&source.tr), target.tr.compose(&self.bottom))
            && eq(
                self.bottom.compose(&source.gamma),
                target.gamma.compose(&self.bottom),
            )
    }

    pub fn is_isomorphism(&self, source: &CpMackey, target: &CpMackey) -> bool {
        self.is_natural(source, target)
            && self.top.is_isomorphism()
            && self.bottom.is_isomorphism()
    }
}

impl CpMackey {
    /// Assembles a functor from matrices; checks shapes and that each map is well
    /// defined, but not the Mackey axioms (see [`CpMackey::validate`]).
    pub fn new(
        p: u64,
        bottom: FgAbGroup,
        top: FgAbGroup,
        gamma: IntMatrix,
        res: IntMatrix,
        tr: IntMatrix,
    ) -> Result<Self> {
        require_odd_prime(p)?;
        let gamma = Homomorphism::new(bottom.clone(), bottom.clone(), gamma)
            .map_err(|e| named("gamma", e))?;
        let res =
            Homomorphism::new(top.clone(), bottom.clone(), res).map_err(|e| named("res", e))?;
        let tr = Homomorphism::new(bottom.clone(), top.clone(), tr).map_err(|e| named("tr", e))?;
        Ok(CpMackey {
            p,
            bottom,
            top,
            gamma,
            res,
            tr,
        })
    }

    /// Like [`CpMackey::new`], and additionally rejects functors failing an axiom.
    pub fn new_validated(
        p: u64,
        bottom: FgAbGroup,
        top: FgAbGroup,
        gamma: IntMatrix,
        res: IntMatrix,
        tr: IntMatrix,
    ) -> Result<Self> {
        let m = CpMackey::new(p, bottom, top, gamma, res, tr)?;
        m.ensure_valid()?;
        Ok(m)
    }

    /// The Burnside functor: `A(C_p) = Z{[C_p/C_p], [C_p/e]}` over `Z`,
    /// with `res(a, b) = a + p b` and `tr(c) = (0, c)`.
    pub fn burnside(p: u64) -> Result<Self> {
        let pi = p as i64;
        CpMackey::new(
            p,
            FgAbGroup::free(1),
            FgAbGroup::free(2),
            IntMatrix::identity(1),
            IntMatrix::from_i64(1, 2, &[1, pi]),
            IntMatrix::from_i64(2, 1, &[0, 1]),
        )
    }

    /// The fixed-point functor of `Z`: `res = 1`, `tr = p`.
    pub fn fixed_point_integers(p: u64) -> Result<Self> {
        CpMackey::new(
            p,
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::identity(1),
            IntMatrix::identity(1),
            IntMatrix::from_i64(1, 1, &[p as i64]),
        )
    }

    /// The dual of the fixed-point functor: `res = p`, `tr = 1`.
    pub fn orbit_integers(p: u64) -> Result<Self> {
        CpMackey::new(
            p,
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::identity(1),
            IntMatrix::from_i64(1, 1, &[p as i64]),
            IntMatrix::identity(1),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bottom(&self) -> &FgAbGroup {
        &self.bottom
    }

    pub fn top(&self) -> &FgAbGroup {
        &self.top
    }

    pub fn gamma(&self) -> &Homomorphism {
        &self.gamma
    }

    pub fn res(&self) -> &Homomorphism {
        &self.res
    }

    pub fn tr(&self) -> &Homomorphism {
        &self.tr
    }

    /// Every failed axiom, each with the first generator on which it fails.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.bottom.gens();
        let id = IntMatrix::identity(n);
        let gamma = self.gamma.matrix();

        let mut power = id.clone();
        let mut norm = IntMatrix::zeros(n, n);
        for _ in 0..self.p {
            norm = &norm + &power;
            power = gamma * &power;
        }

        let checks = [
            (Axiom::GammaOrder, &self.bottom, &power - &id),
            (
                Axiom::RestrictionFixed,
                &self.bottom,
                &(gamma * self.res.matrix()) - self.res.matrix(),
            ),
            (
                Axiom::TransferInvariant,
                &self.top,
                &(self.tr.matrix() * gamma) - self.tr.matrix(),
            ),
            (
                Axiom::DoubleCoset,
                &self.bottom,
                &(self.res.matrix() * self.tr.matrix()) - &norm,
            ),
        ];
        checks
            .into_iter()
            .filter_map(|(axiom, group, diff)| {
                group
                    .first_nonzero_column(&diff)
                    .map(|generator| Violation { axiom, generator })
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Axioms(
                violations.iter().map(ToString::to_string).collect(),
            ))
        }
    }

    /// Replaces the top level by a simplified group. `to_new`/`to_old` are the
    /// coordinate changes between the current top and the new one.
    fn with_new_top(&self, top: FgAbGroup, to_new: &IntMatrix, to_old: &IntMatrix) -> CpMackey {
        let n = self.bottom.gens();
        let id = IntMatrix::identity(n);
        CpMackey {
            p: self.p,
            bottom: self.bottom.clone(),
            top: top.clone(),
            gamma: self.gamma.clone(),
            res: self.res.transport(&top, to_old, &self.bottom, &id),
            tr: self.tr.transport(&self.bottom, &id, &top, to_new),
        }
    }

    /// Flips free top generators so that the first nonzero restriction entry is positive.
    fn normalize_signs(&mut self) -> Vec<usize> {
        let torsion = self.top.relations().cols();
        let mut flipped = Vec::new();
        for j in torsion..self.top.gens() {
            if self
                .res
                .first_nonzero_in_column(j)
                .is_some_and(|x| x.is_negative())
            {
                self.res.flip_source_generator(j);
                self.tr.flip_target_generator(j);
                flipped.push(j);
            }
        }
        flipped
    }

    /// The largest quotient on which restriction is injective, with the projection.
    ///
    /// The bottom level is kept; the top level becomes `top / ker(res)`.
    pub fn p_zero_with_projection(&self) -> Result<(CpMackey, MackeyMorphism)> {
        self.ensure_valid()?;
        let kernel = self.res.kernel();
        let projection = self.top.quotient(kernel.matrix())?;
        let simple = projection.target().simplify();

        let mut out = self.with_new_top(simple.group.clone(), &simple.to_new, &simple.to_old);
        let mut top_map = Homomorphism::identity(&self.top).transport(
            &self.top,
            &IntMatrix::identity(self.top.gens()),
            &simple.group,
            &simple.to_new,
        );
        for j in out.normalize_signs() {
            top_map.flip_target_generator(j);
        }
        let morphism = MackeyMorphism {
            top: top_map,
            bottom: Homomorphism::identity(&self.bottom),
        };
        Ok((out, morphism))
    }

    pub fn p_zero(&self) -> Result<CpMackey> {
        Ok(self.p_zero_with_projection()?.0)
    }

    /// The sub-functor generated by the bottom level, with its inclusion.
    ///
    /// The bottom level is kept; the top level becomes `image(tr)`.
    pub fn e_tensor_with_inclusion(&self) -> Result<(CpMackey, MackeyMorphism)> {
        self.ensure_valid()?;
        let image = self.top.subgroup_presentation(self.tr.matrix())?;
        let simple = image.simplify();
        let inclusion = self.tr.matrix() * &simple.to_old;

        let n = self.bottom.gens();
        let id = IntMatrix::identity(n);
        let corestriction = Homomorphism::identity(&self.bottom).transport(
            &self.bottom,
            &id,
            &simple.group,
            &simple.to_new,
        );
        let mut out = CpMackey {
            p: self.p,
            bottom: self.bottom.clone(),
            top: simple.group.clone(),
            gamma: self.gamma.clone(),
            res: Homomorphism::new(
                simple.group.clone(),
                self.bottom.clone(),
                self.res.matrix() * &inclusion,
            )?,
            tr: corestriction,
        };
        let mut top_map = Homomorphism::new(simple.group.clone(), self.top.clone(), inclusion)?;
        for j in out.normalize_signs() {
            top_map.flip_source_generator(j);
        }
        let morphism = MackeyMorphism {
            top: top_map,
            bottom: Homomorphism::identity(&self.bottom),
        };
        Ok((out, morphism))
    }

    pub fn e_tensor(&self) -> Result<CpMackey> {
        Ok(self.e_tensor_with_inclusion()?.0)
    }

    /// Scalar view of a functor whose levels are both a single copy of `Z`:
    /// `(res, tr)` as integers.
    pub fn as_scalars(&self) -> Option<(BigInt, BigInt)> {
        let is_z = |g: &FgAbGroup| g.gens() == 1 && g.relations().cols() == 0;
        (is_z(&self.top) && is_z(&self.bottom)).then(|| {
            (
                self.res.matrix()[(0, 0)].clone(),
                self.tr.matrix()[(0, 0)].clone(),
            )
        })
    }
}

impl fmt::Display for CpMackey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "C_{} Mackey functor", self.p)?;
        writeln!(f, "  top    M(G/G) = {}", self.top)?;
        writeln!(f, "  bottom M(G/e) = {}", self.bottom)?;
        writeln!(f, "  res   = {}", self.res.matrix())?;
        writeln!(f, "  tr    = {}", self.tr.matrix())?;
        write!(f, "  gamma = {}", self.gamma.matrix())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub gens: usize,
    #[serde(default)]
    pub rels: JsonRows,
}

/// The on-disk form of a [`CpMackey`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MackeyJson {
    pub p: u64,
    pub bottom: GroupJson,
    pub top: GroupJson,
    pub res: JsonRows,
    pub tr: JsonRows,
    pub gamma: JsonRows,
}

fn group_from_json(g: GroupJson, path: &str) -> Result<FgAbGroup> {
    // Relation matrices have one row per generator; the relator count is read off the rows.
    let cols = g.rels.first().map_or(0, Vec::len);
    let rels = IntMatrix::from_json_rows(g.rels, g.gens, cols)
        .map_err(|e| Error::Parse(format!("{path}.rels: {e}")))?;
    FgAbGroup::new(g.gens, rels).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn group_to_json(g: &FgAbGroup) -> GroupJson {
    GroupJson {
        gens: g.gens(),
        rels: g.relations().to_json_rows(),
    }
}

impl CpMackey {
    pub fn from_json_struct(j: MackeyJson) -> Result<Self> {
        let bottom = group_from_json(j.bottom, "$.bottom")?;
        let top = group_from_json(j.top, "$.top")?;
        let matrix = |rows: JsonRows, r: usize, c: usize, path: &str| {
            IntMatrix::from_json_rows(rows, r, c).map_err(|e| Error::Parse(format!("{path}: {e}")))
        };
        let gamma = matrix(j.gamma, bottom.gens(), bottom.gens(), "$.gamma")?;
        let res = matrix(j.res, bottom.gens(), top.gens(), "$.res")?;
        let tr = matrix(j.tr, top.gens(), bottom.gens(), "$.tr")?;
        CpMackey::new(j.p, bottom, top, gamma, res, tr)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: MackeyJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("$: {e}")))?;
        CpMackey::from_json_struct(j)
    }

    pub fn to_json_struct(&self) -> MackeyJson {
        MackeyJson {
            p: self.p,
            bottom: group_to_json(&self.bottom),
            top: group_to_json(&self.top),
            res: self.res.matrix().to_json_rows(),
            tr: self.tr.matrix().to_json_rows(),
            gamma: self.gamma.matrix().to_json_rows(),
        }
    }
}

impl Serialize for CpMackey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_struct().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CpMackey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MackeyJson::deserialize(d)?;
        CpMackey::from_json_struct(j).map_err(serde::de::Error::custom)
    }
}

/// Identical presentations and identical structure matrices.
pub fn same_shape(a: &CpMackey, b: &CpMackey) -> bool {
    a.p == b.p
        && a.top == b.top
        && a.bottom == b.bottom
        && a.res.matrix() == b.res.matrix()
        && a.tr.matrix() == b.tr.matrix()
        && a.gamma.matrix() == b.gamma.matrix()
}

impl CpMackey {
    /// True iff the top level is the zero group.
    pub fn top_is_zero(&self) -> bool {
        self.top.is_trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn standard_functors_validate() {
        for p in [3, 5, 7] {
            assert!(CpMackey::burnside(p).unwrap().is_valid());
            assert!(CpMackey::fixed_point_integers(p).unwrap().is_valid());
            assert!(CpMackey::orbit_integers(p).unwrap().is_valid());
        }
    }

    #[test]
    fn bad_norm_detected() {
        let m = CpMackey::new(
            3,
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::identity(1),
            IntMatrix::identity(1),
            IntMatrix::identity(1),
        )
        .unwrap();
        let v = m.validate();
        assert_eq!(
            v,
            vec![Violation {
                axiom: Axiom::DoubleCoset,
                generator: 0
            }]
        );
        assert!(v[0].to_string().contains("res∘tr ≠ norm"));
        assert!(m.p_zero().is_err());
    }

    #[test]
    fn ill_defined_reported_separately() {
        let err = CpMackey::new(
            3,
            FgAbGroup::free(1),
            FgAbGroup::from_orders(&[3]),
            IntMatrix::identity(1),
            IntMatrix::identity(1),
            IntMatrix::identity(1),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::IllDefined {
                map: "$.res".into(),
                generator: 0
            }
        );
        assert!(CpMackey::burnside(4).is_err());
    }

    #[test]
    fn burnside_restriction_not_injective() {
        for p in [3, 5] {
            let b = CpMackey::burnside(p).unwrap();
            assert!(!b.res().is_injective());
            assert_eq!(b.top().invariants().free_rank, 2);
            assert!(b.top().invariants().torsion.is_empty());
        }
    }

    #[test]
    fn p_zero_of_burnside_is_fixed_points() {
        for p in [3, 5, 7] {
            let (q, proj) = CpMackey::burnside(p).unwrap().p_zero_with_projection().unwrap();
            assert_eq!(q.as_scalars(), Some((z(1), z(p as i64))));
            assert!(q.is_valid());
            assert!(proj.is_natural(&CpMackey::burnside(p).unwrap(), &q));
            assert!(proj.top.is_surjective());
            assert!(same_shape(&q, &CpMackey::fixed_point_integers(p).unwrap()));
        }
    }

    #[test]
    fn p_zero_fixes_injective_restriction() {
        let fixed = CpMackey::fixed_point_integers(3).unwrap();
        let q = fixed.p_zero().unwrap();
        assert!(same_shape(&q, &fixed));
    }

    #[test]
    fn p_zero_kills_top_torsion() {
        let m = CpMackey::new(
            3,
            FgAbGroup::zero(),
            FgAbGroup::from_orders(&[3]),
            IntMatrix::zeros(0, 0),
            IntMatrix::zeros(0, 1),
            IntMatrix::zeros(1, 0),
        )
        .unwrap();
        assert!(m.is_valid());
        assert!(m.p_zero().unwrap().top_is_zero());
    }

    #[test]
    fn e_tensor_examples() {
        for p in [3, 5] {
            let (e, inc) = CpMackey::burnside(p).unwrap().e_tensor_with_inclusion().unwrap();
            assert_eq!(e.as_scalars(), Some((z(p as i64), z(1))));
            assert!(inc.is_natural(&e, &CpMackey::burnside(p).unwrap()));
            assert!(inc.top.is_injective());
            let col = inc.top.matrix().column(0);
            assert_eq!(col, vec![z(0), z(1)]);

            let fixed = CpMackey::fixed_point_integers(p).unwrap();
            let (e, inc) = fixed.e_tensor_with_inclusion().unwrap();
            assert_eq!(inc.top.matrix(), &IntMatrix::from_i64(1, 1, &[p as i64]));
            assert_eq!(e.as_scalars(), Some((z(p as i64), z(1))));
        }
        let m = CpMackey::new(
            3,
            FgAbGroup::zero(),
            FgAbGroup::free(2),
            IntMatrix::zeros(0, 0),
            IntMatrix::zeros(0, 2),
            IntMatrix::zeros(2, 0),
        )
        .unwrap();
        assert!(m.e_tensor().unwrap().top_is_zero());
    }

    #[test]
    fn json_round_trip_and_paths() {
        let b = CpMackey::burnside(3).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(
            text,
            r#"{"p":3,"bottom":{"gens":1,"rels":[[]]},"top":{"gens":2,"rels":[[],[]]},"res":[[1,3]],"tr":[[0],[1]],"gamma":[[1]]}"#
        );
        let back = CpMackey::from_json(&text).unwrap();
        assert_eq!(back, b);

        let bad = r#"{"p":3,"bottom":{"gens":1,"rels":[]},"top":{"gens":2,"rels":[]},"res":[[1]],"tr":[[0],[1]],"gamma":[[1]]}"#;
        match CpMackey::from_json(bad) {
            Err(Error::Parse(msg)) => assert!(msg.starts_with("$.res"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let torsion = r#"{"p":3,"bottom":{"gens":1},"top":{"gens":1,"rels":[[3]]},"res":[[0]],"tr":[[0]],"gamma":[[1]]}"#;
        let m = CpMackey::from_json(torsion).unwrap();
        assert_eq!(m.top().order(), Some(z(3)));
    }
}
