//! The finite group Q of upper-triangular matrices
//!
//! ```text
//!           [ a  b  c  ]
//! g(a,b,c) = [ 0  a^2 b^2 ]      a in F_4^x, b, c in F_4,
//!           [ 0  0  a  ]        with a*c^2 + a^2*c = b^3,
//! ```
//!
//! together with its graded extension Q x| Z, where the integer r acts on Q
//! by raising matrix entries to the q^r-th power (q = 2^f).  For even f the
//! action is trivial and the extension is a direct product; for odd f the
//! action has order two.
//!
//! All elements of F_4 are encoded as u64 values 0..4 in the shared
//! `gf2::Field::get(2)` (modulus x^2+x+1, so 2 and 3 are the two primitive
//! cube roots of unity).

use crate::gf2::{Field, Zeta3Choice};
use std::collections::BTreeMap;
use std::sync::Arc;

fn f4() -> Arc<Field> {
    Field::get(2)
}

/// Which solution of x^2 + x = 1 serves as gamma_0 in the pinned generator
/// g(1, 1, gamma_0) of the cyclic subgroup C_4.  Both primitive cube roots
/// qualify; the suite sweeps both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Gamma0Choice {
    #[default]
    First,
    Second,
}

impl Gamma0Choice {
    pub fn all() -> [Gamma0Choice; 2] {
        [Gamma0Choice::First, Gamma0Choice::Second]
    }

    /// The actual F_4 value, relative to the zeta_3 convention.
    pub fn value(self, z3: Zeta3Choice) -> u64 {
        let z = Field::zeta3_f4(z3);
        match self {
            Gamma0Choice::First => z,
            Gamma0Choice::Second => f4().sq(z),
        }
    }
}

/// An element g(a, b, c) of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QElem {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl QElem {
    /// Construct with the defining constraint a*c^2 + a^2*c = b^3 checked.
    pub fn new(a: u64, b: u64, c: u64) -> Option<QElem> {
        let f = f4();
        if a == 0 || a > 3 || b > 3 || c > 3 {
            return None;
        }
        let lhs = f.mul(a, f.sq(c)) ^ f.mul(f.sq(a), c);
        let rhs = f.mul(f.sq(b), b);
        (lhs == rhs).then_some(QElem { a, b, c })
    }

    pub fn identity() -> QElem {
        QElem { a: 1, b: 0, c: 0 }
    }

    /// Closed-form product, verified against the literal 3x3 matrix product
    /// in the tests below:
    /// g(a,b,c) g(a',b',c') = g(aa', ab' + b a'^2, ac' + b b'^2 + c a').
    pub fn mul(self, rhs: QElem) -> QElem {
        let f = f4();
        let a = f.mul(self.a, rhs.a);
        let b = f.mul(self.a, rhs.b) ^ f.mul(self.b, f.sq(rhs.a));
        let c = f.mul(self.a, rhs.c) ^ f.mul(self.b, f.sq(rhs.b)) ^ f.mul(self.c, rhs.a);
        QElem::new(a, b, c).expect("product left the group")
    }

    pub fn inv(self) -> QElem {
        // |Q| = 24: brute force is instant and obviously correct.
        enumerate()
            .into_iter()
            .find(|h| self.mul(*h) == QElem::identity())
            .expect("group element without inverse")
    }

    /// Entrywise Frobenius x -> x^2 (the generator of Gal(F_4/F_2)).
    pub fn frob(self) -> QElem {
        let f = f4();
        QElem::new(f.sq(self.a), f.sq(self.b), f.sq(self.c)).expect("frobenius left the group")
    }

    /// Entries raised to the q^r-th power, q = 2^f.  Only the parity of
    /// f * r matters on F_4.
    pub fn twist(self, f: u32, r: i64) -> QElem {
        if (f as i64 * r).rem_euclid(2) == 1 {
            self.frob()
        } else {
            self
        }
    }

    /// The literal matrix form, for oracle comparisons.
    pub fn matrix(self) -> [[u64; 3]; 3] {
        let f = f4();
        [
            [self.a, self.b, self.c],
            [0, f.sq(self.a), f.sq(self.b)],
            [0, 0, self.a],
        ]
    }

    pub fn order(self) -> u32 {
        let mut p = self;
        for k in 1..=24 {
            if p == QElem::identity() {
                return k;
            }
            p = p.mul(self);
        }
        unreachable!("element order exceeds |Q|")
    }
}

/// 3x3 matrix product over F_4 (test oracle for `QElem::mul`).
pub fn matrix3_mul(x: [[u64; 3]; 3], y: [[u64; 3]; 3]) -> [[u64; 3]; 3] {
    let f = f4();
    let mut out = [[0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, yk) in y.iter().enumerate() {
                out[i][j] ^= f.mul(x[i][k], yk[j]);
            }
        }
    }
    out
}

/// All 24 elements of Q, sorted by (a, b, c).
pub fn enumerate() -> Vec<QElem> {
    let mut v = Vec::with_capacity(24);
    for a in 1..4u64 {
        for b in 0..4u64 {
            for c in 0..4u64 {
                if let Some(g) = QElem::new(a, b, c) {
                    v.push(g);
                }
            }
        }
    }
    v
}

// ---------------------------------------------------------------------------
// Ungraded subgroups of Q.
// ---------------------------------------------------------------------------

/// Q_8 = { g(1, b, c) }: the Sylow 2-subgroup (quaternion of order 8).
pub fn q8() -> Vec<QElem> {
    enumerate().into_iter().filter(|g| g.a == 1).collect()
}

/// The pinned generator g(1, 1, gamma_0) of the cyclic subgroup C_4.
pub fn c4_generator(g0: Gamma0Choice, z3: Zeta3Choice) -> QElem {
    QElem::new(1, 1, g0.value(z3)).expect("gamma_0 must satisfy x^2+x=1")
}

/// C_4 = <g(1, 1, gamma_0)>.
pub fn c4(g0: Gamma0Choice, z3: Zeta3Choice) -> Vec<QElem> {
    cyclic(c4_generator(g0, z3))
}

fn cyclic(gen: QElem) -> Vec<QElem> {
    let mut v = vec![QElem::identity()];
    let mut p = gen;
    while p != QElem::identity() {
        v.push(p);
        p = p.mul(gen);
    }
    v
}

/// The center Z = { g(1,0,c) : c^2 + c = 0 } = { 1, g(1,0,1) }.
pub fn z_center() -> Vec<QElem> {
    vec![QElem::identity(), QElem::new(1, 0, 1).unwrap()]
}

/// C_3 = { g(a, 0, 0) }.
pub fn c3() -> Vec<QElem> {
    (1..4).map(|a| QElem::new(a, 0, 0).unwrap()).collect()
}

/// C_6 = Z x C_3 = { g(a, 0, c) : c in F_2 }.
pub fn c6() -> Vec<QElem> {
    let mut v = Vec::new();
    for a in 1..4u64 {
        for c in 0..2u64 {
            v.push(QElem::new(a, 0, c).unwrap());
        }
    }
    v
}

// ---------------------------------------------------------------------------
// The graded group Q x| Z.
// ---------------------------------------------------------------------------

/// An element (g, n) of Q x| Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graded {
    pub n: i64,
    pub g: QElem,
}

impl Graded {
    pub fn new(g: QElem, n: i64) -> Graded {
        Graded { g, n }
    }

    pub fn identity() -> Graded {
        Graded::new(QElem::identity(), 0)
    }

    /// The central period element z = (g(1,0,0), 2) for odd f; for even f
    /// the relevant period element is (g(1,0,0), 1).
    pub fn period_element(f: u32) -> Graded {
        Graded::new(QElem::identity(), grade_period(f))
    }

    pub fn mul(self, f: u32, rhs: Graded) -> Graded {
        Graded::new(self.g.mul(rhs.g.twist(f, self.n)), self.n + rhs.n)
    }

    pub fn inv(self, f: u32) -> Graded {
        Graded::new(self.g.inv().twist(f, -self.n), -self.n)
    }

    pub fn pow(self, f: u32, e: i64) -> Graded {
        if e < 0 {
            return self.inv(f).pow(f, -e);
        }
        let mut acc = Graded::identity();
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn conj_by(self, f: u32, t: Graded) -> Graded {
        t.mul(f, self).mul(f, t.inv(f))
    }
}

/// The grade period of the finite quotient: 2 for odd f (the action of Z on
/// Q has order two), 1 for even f (trivial action).
pub fn grade_period(f: u32) -> i64 {
    if f % 2 == 1 {
        2
    } else {
        1
    }
}

/// All elements of the finite quotient (Q x| Z) / <period element>, with
/// grades reduced to 0..period.
pub fn quotient_elements(f: u32) -> Vec<Graded> {
    let p = grade_period(f);
    let mut v = Vec::new();
    for n in 0..p {
        for g in enumerate() {
            v.push(Graded::new(g, n));
        }
    }
    v
}

/// Reduce a graded element into the finite quotient, returning the quotient
/// representative and the power of the period element that was stripped.
pub fn quotient_reduce(f: u32, x: Graded) -> (Graded, i64) {
    let p = grade_period(f);
    let r = x.n.rem_euclid(p);
    ((Graded::new(x.g, r)), (x.n - r) / p)
}

// ---------------------------------------------------------------------------
// Graded subgroups.
// ---------------------------------------------------------------------------

/// Descriptors for the graded subgroups the character computations use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    /// The whole group Q x| Z.
    QZ,
    /// Q_8 x| Z.
    Q8Z,
    /// C_4 x Z (even f: the action is trivial so C_4 is normalized trivially).
    C4Z,
    /// The graded mixture C: (g, n) with g in C_4 exactly when n is even,
    /// and g in Q_8 \ C_4 exactly when n is odd.  (Odd f only.)
    C,
    /// C_6 x| Z.
    C6Z,
    /// Z x| Z (the center of Q times the grading).
    ZZ,
    /// C' = <(g(1, zb3, zb3), 1)> where zb3 = zeta_3^2.  Infinite cyclic.
    CPrime,
    /// C'' = <(g(1, 0, 1), 4)> = C'^4.  Infinite cyclic.
    CDoublePrime,
}

/// The convention-dependent generator (g(1, zb3, zb3), 1) of C'.
pub fn cprime_generator(z3: Zeta3Choice) -> Graded {
    let zb = f4().sq(Field::zeta3_f4(z3));
    Graded::new(QElem::new(1, zb, zb).expect("(1, zb3, zb3) lies in Q"), 1)
}

/// The generator (g(1,0,1), 4) of C''.
pub fn cdoubleprime_generator() -> Graded {
    Graded::new(QElem::new(1, 0, 1).unwrap(), 4)
}

/// Convention data a membership test may need.
#[derive(Debug, Clone, Copy)]
pub struct GroupCtx {
    pub f: u32,
    pub zeta3: Zeta3Choice,
    pub gamma0: Gamma0Choice,
}

impl Subgroup {
    /// Membership of a true graded element (arbitrary grade).
    pub fn contains(self, ctx: &GroupCtx, x: Graded) -> bool {
        match self {
            Subgroup::QZ => true,
            Subgroup::Q8Z => x.g.a == 1,
            Subgroup::C4Z => c4(ctx.gamma0, ctx.zeta3).contains(&x.g),
            Subgroup::C => {
                let in_c4 = c4(ctx.gamma0, ctx.zeta3).contains(&x.g);
                let in_q8 = x.g.a == 1;
                in_q8 && (in_c4 == (x.n % 2 == 0))
            }
            Subgroup::C6Z => x.g.b == 0 && x.g.c < 2,
            Subgroup::ZZ => x.g.a == 1 && x.g.b == 0 && x.g.c < 2,
            Subgroup::CPrime => cprime_generator(ctx.zeta3).pow(ctx.f, x.n) == x,
            Subgroup::CDoublePrime => {
                x.n % 4 == 0 && cdoubleprime_generator().pow(ctx.f, x.n / 4) == x
            }
        }
    }

    /// Whether the subgroup contains the central period element, i.e.
    /// whether its image in the finite quotient faithfully indexes cosets.
    pub fn contains_period(self, ctx: &GroupCtx) -> bool {
        self.contains(ctx, Graded::period_element(ctx.f))
    }

    /// The subgroup's image in the finite quotient, as an element list.
    pub fn quotient_members(self, ctx: &GroupCtx) -> Vec<Graded> {
        match self {
            // For the infinite cyclic subgroups the quotient image is the
            // set of reduced generator powers, not a membership filter.
            Subgroup::CPrime | Subgroup::CDoublePrime => {
                let gen = match self {
                    Subgroup::CPrime => cprime_generator(ctx.zeta3),
                    _ => cdoubleprime_generator(),
                };
                let mut out = Vec::new();
                let mut p = Graded::identity();
                loop {
                    let (r, _) = quotient_reduce(ctx.f, p);
                    if out.contains(&r) {
                        break;
                    }
                    out.push(r);
                    p = p.mul(ctx.f, gen);
                }
                out.sort();
                out
            }
            _ => quotient_elements(ctx.f)
                .into_iter()
                .filter(|x| self.contains(ctx, *x))
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Double cosets and cyclic expression.
// ---------------------------------------------------------------------------

/// A double coset H x K in the finite quotient.
#[derive(Debug, Clone)]
pub struct DoubleCoset {
    /// Minimal member under the (n, a, b, c) ordering.
    pub representative: Graded,
    pub members: Vec<Graded>,
    /// H intersected with rep * K * rep^(-1), as quotient elements.
    pub intersection: Vec<Graded>,
}

/// Decompose the finite quotient of `ambient` into H-K double cosets.
/// All three subgroups must contain the period element, so that cosets in
/// the quotient correspond exactly to graded cosets.
pub fn double_cosets(
    ctx: &GroupCtx,
    ambient: Subgroup,
    h: Subgroup,
    k: Subgroup,
) -> Vec<DoubleCoset> {
    assert!(h.contains_period(ctx) && k.contains_period(ctx));
    let hs = h.quotient_members(ctx);
    let ks = k.quotient_members(ctx);
    let all = ambient.quotient_members(ctx);
    let mut seen: BTreeMap<Graded, usize> = BTreeMap::new();
    let mut cosets: Vec<DoubleCoset> = Vec::new();
    for x in &all {
        if seen.contains_key(x) {
            continue;
        }
        let idx = cosets.len();
        let mut members = Vec::new();
        for hh in &hs {
            for kk in &ks {
                let (m, _) = quotient_reduce(ctx.f, hh.mul(ctx.f, *x).mul(ctx.f, *kk));
                if seen.insert(m, idx).is_none() {
                    members.push(m);
                }
            }
        }
        members.sort();
        let rep = members[0];
        let intersection = hs
            .iter()
            .copied()
            .filter(|hh| {
                let conj = hh.conj_by(ctx.f, rep.inv(ctx.f));
                // conj is a quotient-level element; K contains the period
                // element, so quotient membership is well defined.
                let (m, _) = quotient_reduce(ctx.f, conj);
                ks.contains(&m)
            })
            .collect();
        cosets.push(DoubleCoset {
            representative: rep,
            members,
            intersection,
        });
    }
    cosets
}

/// Write `target` as gen^e * z^k where z = (g(1,0,0), 2), by brute force
/// over e in 0..order_bound.  Returns (e, k) or None.
pub fn express_in_cyclic(
    f: u32,
    gen: Graded,
    target: Graded,
    order_bound: i64,
) -> Option<(i64, i64)> {
    for e in 0..order_bound {
        let p = gen.pow(f, e);
        if p.g == target.g && (target.n - p.n) % 2 == 0 {
            let k = (target.n - p.n) / 2;
            // Confirm: multiplying by the central z^k only shifts the grade.
            let z = Graded::period_element(1); // (1, 2), central for any f
            debug_assert_eq!(p.mul(f, z.pow(f, k)), target);
            return Some((e, k));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_has_24_elements() {
        assert_eq!(enumerate().len(), 24);
    }

    #[test]
    fn closed_form_product_matches_matrix_oracle() {
        for x in enumerate() {
            for y in enumerate() {
                assert_eq!(x.mul(y).matrix(), matrix3_mul(x.matrix(), y.matrix()));
            }
        }
    }

    #[test]
    fn group_axioms() {
        let e = QElem::identity();
        for x in enumerate() {
            assert_eq!(x.mul(x.inv()), e);
            assert_eq!(x.inv().mul(x), e);
            assert_eq!(x.mul(e), x);
            for y in enumerate() {
                for z in enumerate().into_iter().step_by(5) {
                    assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
                }
            }
        }
    }

    #[test]
    fn subgroup_sizes() {
        assert_eq!(q8().len(), 8);
        assert_eq!(z_center().len(), 2);
        assert_eq!(c3().len(), 3);
        assert_eq!(c6().len(), 6);
        for g0 in Gamma0Choice::all() {
            for z3 in Zeta3Choice::all() {
                assert_eq!(c4(g0, z3).len(), 4);
                assert_eq!(c4_generator(g0, z3).order(), 4);
            }
        }
    }

    #[test]
    fn c4_generator_squares_to_central_involution() {
        // g(1,1,gamma_0)^2 = g(1,0,1), the nontrivial central element.
        for g0 in Gamma0Choice::all() {
            for z3 in Zeta3Choice::all() {
                let g = c4_generator(g0, z3);
                assert_eq!(g.mul(g), QElem::new(1, 0, 1).unwrap());
            }
        }
    }

    #[test]
    fn center_is_the_center() {
        let z: Vec<QElem> = enumerate()
            .into_iter()
            .filter(|g| enumerate().into_iter().all(|h| g.mul(h) == h.mul(*g)))
            .collect();
        assert_eq!(z, z_center());
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for x in enumerate() {
            for y in enumerate() {
                assert_eq!(x.mul(y).frob(), x.frob().mul(y.frob()));
            }
        }
    }

    #[test]
    fn graded_mul_respects_parity() {
        for f in [1u32, 2] {
            let x = Graded::new(QElem::new(2, 0, 0).unwrap(), 1);
            let y = Graded::new(QElem::new(1, 1, 2).unwrap(), 0);
            let p = x.mul(f, y);
            assert_eq!(p.n, 1);
            if f % 2 == 0 {
                assert_eq!(p.g, x.g.mul(y.g));
            } else {
                assert_eq!(p.g, x.g.mul(y.g.frob()));
            }
            assert_eq!(x.mul(f, x.inv(f)), Graded::identity());
        }
    }

    #[test]
    fn period_element_is_central() {
        for f in [1u32, 2, 3] {
            let z = Graded::period_element(f);
            for g in enumerate() {
                for n in 0..2 {
                    let x = Graded::new(g, n);
                    assert_eq!(x.mul(f, z), z.mul(f, x));
                }
            }
        }
    }

    #[test]
    fn cprime_image_is_cyclic_of_order_8() {
        for z3 in Zeta3Choice::all() {
            let ctx = GroupCtx {
                f: 1,
                zeta3: z3,
                gamma0: Gamma0Choice::First,
            };
            let members = Subgroup::CPrime.quotient_members(&ctx);
            assert_eq!(members.len(), 8);
            // Fourth power of the generator is (g(1,0,1), 4).
            let g4 = cprime_generator(z3).pow(1, 4);
            assert_eq!(g4, cdoubleprime_generator());
            // C' does not contain the period element (1, 2).
            assert!(!Subgroup::CPrime.contains_period(&ctx));
            assert!(Subgroup::C.contains_period(&ctx));
        }
    }

    #[test]
    fn graded_c_has_index_two_in_q8z() {
        let ctx = GroupCtx {
            f: 1,
            zeta3: Zeta3Choice::First,
            gamma0: Gamma0Choice::First,
        };
        let c = Subgroup::C.quotient_members(&ctx);
        let q8z = Subgroup::Q8Z.quotient_members(&ctx);
        assert_eq!(q8z.len(), 16);
        assert_eq!(c.len(), 8);
        // C is closed under multiplication.
        for x in &c {
            for y in &c {
                let (m, _) = quotient_reduce(1, x.mul(1, *y));
                assert!(c.contains(&m), "C not closed: {x:?} * {y:?}");
            }
        }
    }

    #[test]
    fn express_in_cyclic_roundtrip() {
        let z3 = Zeta3Choice::First;
        let gen = cprime_generator(z3);
        for e in 0..8i64 {
            for k in -2..3i64 {
                let z = Graded::period_element(1);
                let target = gen.pow(1, e).mul(1, z.pow(1, k));
                let (e2, k2) = express_in_cyclic(1, gen, target, 8).unwrap();
                assert_eq!(gen.pow(1, e2).mul(1, z.pow(1, k2)), target);
            }
        }
    }

    #[test]
    fn double_cosets_c6z_in_qz() {
        // Two double cosets, with (1,0) and (g(1,1,zb3), 0) in distinct ones.
        for f in [1u32, 2] {
            let ctx = GroupCtx {
                f,
                zeta3: Zeta3Choice::First,
                gamma0: Gamma0Choice::First,
            };
            let dc = double_cosets(&ctx, Subgroup::QZ, Subgroup::C6Z, Subgroup::C6Z);
            assert_eq!(dc.len(), 2);
            let id = Graded::identity();
            let other = Graded::new(QElem::new(1, 1, 3).unwrap(), 0);
            let find = |x: Graded| dc.iter().position(|c| c.members.contains(&x)).unwrap();
            assert_ne!(find(id), find(other));
            // (1,0) lies in the trivial double coset whose representative is itself.
            assert_eq!(dc[find(id)].representative, id);
        }
    }
}
