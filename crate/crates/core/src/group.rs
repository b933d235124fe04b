//! Finite group machinery: group descriptions, element arithmetic, breadth
//! first enumeration, spectra of concrete groups, and solvability testing
//! via the derived series.
//!
//! A [`GroupSpec`] is a serializable description of a group. Supported kinds:
//!
//! * `perm`: subgroup of the symmetric group generated by permutations given
//!   in image form (`gens[i][j]` is the image of point `j`).
//! * `mat2m`: subgroup of GL(4, GF(2^alpha)) generated by explicit matrices.
//! * `frobenius`: metacyclic group Z_m semidirect Z_k where the generator of
//!   Z_k acts as multiplication by `t`; the action must be fixed point free.
//! * `cyclic`: Z_n.
//! * `product`: direct product of the listed factors.

use std::collections::{HashSet, VecDeque};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::numth;
use crate::spectrum::Spectrum;

/// Default ceiling on the number of elements `enumerate` will materialize.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 21;

/// Row-major 4x4 matrix over GF(2^alpha); entries are field elements packed
/// as in [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat4(pub [u64; 16]);

impl Mat4 {
    pub const fn identity() -> Mat4 {
        Mat4([1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1])
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.0[r * 4 + c]
    }

    pub fn mul(&self, rhs: &Mat4, f: &FieldCtx) -> Mat4 {
        let mut out = [0u64; 16];
        for r in 0..4 {
            for k in 0..4 {
                let a = self.0[r * 4 + k];
                if a == 0 {
                    continue;
                }
                for c in 0..4 {
                    out[r * 4 + c] ^= f.mul(a, rhs.0[k * 4 + c]);
                }
            }
        }
        Mat4(out)
    }

    fn minor(&self, row: usize, col: usize) -> [u64; 9] {
        let mut out = [0u64; 9];
        let mut k = 0;
        for r in 0..4 {
            if r == row {
                continue;
            }
            for c in 0..4 {
                if c == col {
                    continue;
                }
                out[k] = self.0[r * 4 + c];
                k += 1;
            }
        }
        out
    }

    fn det3(m: &[u64; 9], f: &FieldCtx) -> u64 {
        f.mul(m[0], f.mul(m[4], m[8]))
            ^ f.mul(m[1], f.mul(m[5], m[6]))
            ^ f.mul(m[2], f.mul(m[3], m[7]))
            ^ f.mul(m[2], f.mul(m[4], m[6]))
            ^ f.mul(m[1], f.mul(m[3], m[8]))
            ^ f.mul(m[0], f.mul(m[5], m[7]))
    }

    pub fn det(&self, f: &FieldCtx) -> u64 {
        let mut acc = 0;
        for j in 0..4 {
            let a = self.get(0, j);
            if a != 0 {
                acc ^= f.mul(a, Self::det3(&self.minor(0, j), f));
            }
        }
        acc
    }

    /// Inverse by the adjugate; cofactors carry no signs in characteristic 2.
    pub fn inv(&self, f: &FieldCtx) -> Result<Mat4> {
        let d = self.det(f);
        if d == 0 {
            return Err(Error::SingularGenerator);
        }
        let di = f.inv(d)?;
        let mut out = [0u64; 16];
        for r in 0..4 {
            for c in 0..4 {
                out[r * 4 + c] = f.mul(di, Self::det3(&self.minor(c, r), f));
            }
        }
        Ok(Mat4(out))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Perm {
        degree: u16,
        gens: Vec<Vec<u16>>,
    },
    Mat2m {
        alpha: u32,
        /// Irreducible polynomial as a bitmask; `None` picks the smallest.
        modulus: Option<u64>,
        gens: Vec<Mat4>,
    },
    Frobenius {
        m: u64,
        t: u64,
        k: u64,
    },
    Cyclic {
        n: u64,
    },
    Product(Vec<GroupSpec>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpecDto {
    Perm {
        degree: u16,
        gens: Vec<Vec<u16>>,
    },
    Mat2m {
        alpha: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<String>,
        gens: Vec<Vec<String>>,
    },
    Frobenius {
        m: u64,
        t: u64,
        k: u64,
    },
    Cyclic {
        n: u64,
    },
    Product {
        factors: Vec<SpecDto>,
    },
}

fn spec_to_dto(spec: &GroupSpec) -> SpecDto {
    match spec {
        GroupSpec::Perm { degree, gens } => SpecDto::Perm {
            degree: *degree,
            gens: gens.clone(),
        },
        GroupSpec::Mat2m {
            alpha,
            modulus,
            gens,
        } => SpecDto::Mat2m {
            alpha: *alpha,
            modulus: modulus.map(|m| format!("{m:#b}")),
            gens: gens
                .iter()
                .map(|g| g.0.iter().map(|e| format!("{e:x}")).collect())
                .collect(),
        },
        GroupSpec::Frobenius { m, t, k } => SpecDto::Frobenius {
            m: *m,
            t: *t,
            k: *k,
        },
        GroupSpec::Cyclic { n } => SpecDto::Cyclic { n: *n },
        GroupSpec::Product(fs) => SpecDto::Product {
            factors: fs.iter().map(spec_to_dto).collect(),
        },
    }
}

fn dto_to_spec(dto: SpecDto) -> std::result::Result<GroupSpec, String> {
    Ok(match dto {
        SpecDto::Perm { degree, gens } => GroupSpec::Perm { degree, gens },
        SpecDto::Mat2m {
            alpha,
            modulus,
            gens,
        } => {
            let modulus = match modulus {
                None => None,
                Some(s) => {
                    let digits = s
                        .strip_prefix("0b")
                        .ok_or_else(|| format!("modulus {s:?} must start with 0b"))?;
                    Some(
                        u64::from_str_radix(digits, 2)
                            .map_err(|e| format!("modulus {s:?}: {e}"))?,
                    )
                }
            };
            let gens = gens
                .into_iter()
                .map(|entries| {
                    if entries.len() != 16 {
                        return Err(format!("matrix needs 16 entries, got {}", entries.len()));
                    }
                    let mut m = [0u64; 16];
                    for (slot, s) in m.iter_mut().zip(&entries) {
                        *slot = u64::from_str_radix(s, 16)
                            .map_err(|e| format!("matrix entry {s:?}: {e}"))?;
                    }
                    Ok(Mat4(m))
                })
                .collect::<std::result::Result<Vec<_>, String>>()?;
            GroupSpec::Mat2m {
                alpha,
                modulus,
                gens,
            }
        }
        SpecDto::Frobenius { m, t, k } => GroupSpec::Frobenius { m, t, k },
        SpecDto::Cyclic { n } => GroupSpec::Cyclic { n },
        SpecDto::Product { factors } => GroupSpec::Product(
            factors
                .into_iter()
                .map(dto_to_spec)
                .collect::<std::result::Result<Vec<_>, String>>()?,
        ),
    })
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        spec_to_dto(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        dto_to_spec(SpecDto::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Perm(Vec<u16>),
    Mat(Mat4),
    Frob { u: u64, c: u64 },
    Cyc(u64),
    Tuple(Vec<Element>),
}

#[derive(Debug, Clone)]
enum Kind {
    Perm { degree: u16 },
    Mat { field: FieldCtx },
    Frob { m: u64, k: u64, tpow: Vec<u64> },
    Cyc { n: u64 },
    Prod { factors: Vec<GroupCtx> },
}

/// Validated context for computing inside one group: identity, products,
/// inverses, and element orders.
#[derive(Debug, Clone)]
pub struct GroupCtx {
    kind: Kind,
    gens: Vec<Element>,
}

impl GroupCtx {
    pub fn new(spec: &GroupSpec) -> Result<GroupCtx> {
        match spec {
            GroupSpec::Perm { degree, gens } => {
                let d = *degree as usize;
                for g in gens {
                    if g.len() != d {
                        return Err(Error::InvalidPerm);
                    }
                    let mut seen = vec![false; d];
                    for &img in g {
                        if img as usize >= d || seen[img as usize] {
                            return Err(Error::InvalidPerm);
                        }
                        seen[img as usize] = true;
                    }
                }
                Ok(GroupCtx {
                    kind: Kind::Perm { degree: *degree },
                    gens: gens.iter().cloned().map(Element::Perm).collect(),
                })
            }
            GroupSpec::Mat2m {
                alpha,
                modulus,
                gens,
            } => {
                let field = FieldCtx::new(*alpha, *modulus)?;
                for g in gens {
                    if g.0.iter().any(|&e| !field.contains(e)) {
                        return Err(Error::EntryRange(*alpha));
                    }
                    if g.det(&field) == 0 {
                        return Err(Error::SingularGenerator);
                    }
                }
                Ok(GroupCtx {
                    kind: Kind::Mat { field },
                    gens: gens.iter().copied().map(Element::Mat).collect(),
                })
            }
            GroupSpec::Frobenius { m, t, k } => {
                let (m, t, k) = (*m, *t, *k);
                let bad = Error::InvalidFrobenius { m, t, k };
                if m < 2 || k < 2 || t == 0 || t >= m {
                    return Err(bad);
                }
                let mut tpow = Vec::with_capacity(k as usize);
                let mut acc = 1u64;
                for _ in 0..k {
                    tpow.push(acc);
                    acc = ((acc as u128 * t as u128) % m as u128) as u64;
                }
                if acc != 1 {
                    return Err(bad);
                }
                // Fixed point free action: t^j - 1 must be a unit mod m for
                // 0 < j < k. This also forces k to be the exact order of t.
                for &p in tpow.iter().skip(1) {
                    if numth::gcd((p + m - 1) as u128 % m as u128, m as u128) != 1 {
                        return Err(bad);
                    }
                }
                Ok(GroupCtx {
                    kind: Kind::Frob { m, k, tpow },
                    gens: vec![Element::Frob { u: 1, c: 0 }, Element::Frob { u: 0, c: 1 }],
                })
            }
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::OutOfRange(0));
                }
                let gens = if *n > 1 {
                    vec![Element::Cyc(1)]
                } else {
                    vec![]
                };
                Ok(GroupCtx {
                    kind: Kind::Cyc { n: *n },
                    gens,
                })
            }
            GroupSpec::Product(specs) => {
                if specs.is_empty() {
                    return Err(Error::EmptyProduct);
                }
                let factors = specs
                    .iter()
                    .map(GroupCtx::new)
                    .collect::<Result<Vec<_>>>()?;
                let mut gens = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    for g in &f.gens {
                        let tuple = factors
                            .iter()
                            .enumerate()
                            .map(|(j, fj)| if j == i { g.clone() } else { fj.identity() })
                            .collect();
                        gens.push(Element::Tuple(tuple));
                    }
                }
                Ok(GroupCtx {
                    kind: Kind::Prod { factors },
                    gens,
                })
            }
        }
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            Kind::Perm { degree } => Element::Perm((0..*degree).collect()),
            Kind::Mat { .. } => Element::Mat(Mat4::identity()),
            Kind::Frob { .. } => Element::Frob { u: 0, c: 0 },
            Kind::Cyc { .. } => Element::Cyc(0),
            Kind::Prod { factors } => {
                Element::Tuple(factors.iter().map(|f| f.identity()).collect())
            }
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (Kind::Perm { .. }, Element::Perm(p), Element::Perm(q)) => {
                Element::Perm(p.iter().map(|&i| q[i as usize]).collect())
            }
            (Kind::Mat { field }, Element::Mat(x), Element::Mat(y)) => {
                Element::Mat(x.mul(y, field))
            }
            (
                Kind::Frob { m, k, tpow },
                Element::Frob { u: u1, c: c1 },
                Element::Frob { u: u2, c: c2 },
            ) => {
                let shifted = (tpow[*c1 as usize] as u128 * *u2 as u128) % *m as u128;
                Element::Frob {
                    u: ((*u1 as u128 + shifted) % *m as u128) as u64,
                    c: (c1 + c2) % k,
                }
            }
            (Kind::Cyc { n }, Element::Cyc(x), Element::Cyc(y)) => {
                Element::Cyc(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (Kind::Prod { factors }, Element::Tuple(xs), Element::Tuple(ys)) => Element::Tuple(
                factors
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.mul(x, y))
                    .collect(),
            ),
            _ => panic!("element does not belong to this group"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (&self.kind, a) {
            (Kind::Perm { degree }, Element::Perm(p)) => {
                let mut out = vec![0u16; *degree as usize];
                for (i, &img) in p.iter().enumerate() {
                    out[img as usize] = i as u16;
                }
                Element::Perm(out)
            }
            (Kind::Mat { field }, Element::Mat(x)) => {
                Element::Mat(x.inv(field).expect("group elements are invertible"))
            }
            (Kind::Frob { m, k, tpow }, Element::Frob { u, c }) => {
                let ci = (k - c) % k;
                let shifted = (tpow[ci as usize] as u128 * *u as u128) % *m as u128;
                Element::Frob {
                    u: ((*m as u128 - shifted) % *m as u128) as u64,
                    c: ci,
                }
            }
            (Kind::Cyc { n }, Element::Cyc(x)) => Element::Cyc((n - x) % n),
            (Kind::Prod { factors }, Element::Tuple(xs)) => {
                Element::Tuple(factors.iter().zip(xs).map(|(f, x)| f.inv(x)).collect())
            }
            _ => panic!("element does not belong to this group"),
        }
    }

    /// Order of an element, by closed form where one exists and by repeated
    /// multiplication for matrices. `cap` bounds the iteration count on the
    /// matrix path; any bound on the element order works (the group order
    /// always does, and 2q suffices for elements of Sz(q)).
    pub fn element_order(&self, e: &Element, cap: u64) -> Result<u128> {
        match (&self.kind, e) {
            (Kind::Perm { degree }, Element::Perm(p)) => {
                let mut seen = vec![false; *degree as usize];
                let mut acc: u128 = 1;
                for start in 0..p.len() {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0u128;
                    let mut cur = start;
                    while !seen[cur] {
                        seen[cur] = true;
                        cur = p[cur] as usize;
                        len += 1;
                    }
                    acc = numth::lcm_checked(acc, len)?;
                }
                Ok(acc)
            }
            (Kind::Mat { field }, Element::Mat(m)) => {
                let id = Mat4::identity();
                let mut acc = *m;
                let mut n: u64 = 1;
                while acc != id {
                    acc = acc.mul(m, field);
                    n += 1;
                    if n > cap {
                        return Err(Error::OrderCapExceeded(cap));
                    }
                }
                Ok(n as u128)
            }
            (Kind::Frob { m, k, .. }, Element::Frob { u, c }) => {
                if *c == 0 {
                    Ok((m / numth::gcd(*m as u128, *u as u128) as u64) as u128)
                } else {
                    // With c nonzero the twisted telescoping sum vanishes mod
                    // m because t^c - 1 is a unit, so only the Z_k part counts.
                    Ok((k / numth::gcd(*k as u128, *c as u128) as u64) as u128)
                }
            }
            (Kind::Cyc { n }, Element::Cyc(x)) => {
                Ok((n / numth::gcd(*n as u128, *x as u128) as u64) as u128)
            }
            (Kind::Prod { factors }, Element::Tuple(xs)) => {
                let mut acc: u128 = 1;
                for (f, x) in factors.iter().zip(xs) {
                    acc = numth::lcm_checked(acc, f.element_order(x, cap)?)?;
                }
                Ok(acc)
            }
            _ => panic!("element does not belong to this group"),
        }
    }
}

/// The fully materialized element list of a group, in deterministic
/// discovery order.
#[derive(Debug, Clone)]
pub struct ElementSet {
    ctx: GroupCtx,
    elements: Vec<Element>,
    index: HashSet<Element>,
}

impl ElementSet {
    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains(e)
    }

    /// Set of element orders, reduced to its divisibility-maximal antichain.
    /// The group order itself bounds every element order, so it serves as
    /// the iteration cap.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let cap = self.elements.len() as u64;
        let mut orders = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            orders.push(self.ctx.element_order(e, cap)?);
        }
        Spectrum::normalize(&orders)
    }
}

/// Materializes every element of the group, failing once more than `cap`
/// elements appear. Products are enumerated factor by factor; everything
/// else is a breadth first walk over right multiplication by generators.
pub fn enumerate(spec: &GroupSpec, cap: u64) -> Result<ElementSet> {
    let ctx = GroupCtx::new(spec)?;
    if let GroupSpec::Product(specs) = spec {
        let sets = specs
            .iter()
            .map(|s| enumerate(s, cap))
            .collect::<Result<Vec<_>>>()?;
        let total: u128 = sets.iter().map(|s| s.order() as u128).product();
        if total > cap as u128 {
            return Err(Error::CapExceeded { found: total });
        }
        let mut elements = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; sets.len()];
        'outer: loop {
            elements.push(Element::Tuple(
                idx.iter()
                    .zip(&sets)
                    .map(|(&i, s)| s.elements[i].clone())
                    .collect(),
            ));
            let mut pos = sets.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < sets[pos].elements.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
        let index = elements.iter().cloned().collect();
        return Ok(ElementSet {
            ctx,
            elements,
            index,
        });
    }

    let id = ctx.identity();
    let mut elements = vec![id.clone()];
    let mut index = HashSet::from([id]);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        head += 1;
        for g in &ctx.gens {
            let next = ctx.mul(&cur, g);
            if index.insert(next.clone()) {
                elements.push(next);
                if elements.len() as u64 > cap {
                    return Err(Error::CapExceeded {
                        found: elements.len() as u128,
                    });
                }
            }
        }
    }
    Ok(ElementSet {
        ctx,
        elements,
        index,
    })
}

/// Spectrum of the described group. Direct products are handled without
/// enumerating the product itself: the spectrum of a product is the pairwise
/// lcm closure of the factor spectra.
pub fn spectrum_of(spec: &GroupSpec, cap: u64) -> Result<Spectrum> {
    match spec {
        GroupSpec::Product(fs) => {
            let mut acc: Option<Spectrum> = None;
            for f in fs {
                let s = spectrum_of(f, cap)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.lcm_product(&s)?,
                });
            }
            acc.ok_or(Error::EmptyProduct)
        }
        _ => enumerate(spec, cap)?.spectrum(),
    }
}

/// Matrix generators for the Suzuki group Sz(q), q = 2^alpha with alpha odd,
/// as a subgroup of GL(4, GF(q)): the two unipotent generators S(1,0) and
/// S(0,1), a diagonal torus generator built from the least primitive field
/// element (omitted for q = 2, where the torus is trivial), and the
/// antidiagonal involution. Here S(a,b) is the lower unitriangular matrix
///
/// ```text
/// [ 1                    0     0  0 ]
/// [ a                    1     0  0 ]
/// [ a^(r+1) + b          a^r   1  0 ]
/// [ a^(r+2) + ab + b^r   b     a  1 ]
/// ```
///
/// with r = 2^((alpha+1)/2), so that S(a,b) S(c,d) = S(a+c, b+d+a c^r).
/// The construction is validated by enumeration rather than trusted: tests
/// must confirm the group order q^2 (q-1) (q^2+1) and the spectrum.
pub fn suzuki_generators(field: &FieldCtx) -> Result<GroupSpec> {
    let alpha = field.alpha();
    if alpha.is_multiple_of(2) {
        return Err(Error::SuzukiAlpha(alpha));
    }
    let r = 1u64 << alpha.div_ceil(2);
    let s_mat = |a: u64, b: u64| -> Mat4 {
        let ta = field.pow(a, r);
        let tb = field.pow(b, r);
        Mat4([
            1,
            0,
            0,
            0,
            a,
            1,
            0,
            0,
            field.mul(ta, a) ^ b,
            ta,
            1,
            0,
            field.mul(ta, field.square(a)) ^ field.mul(a, b) ^ tb,
            b,
            a,
            1,
        ])
    };
    let mut gens = vec![s_mat(1, 0), s_mat(0, 1)];
    if alpha > 1 {
        let lam = field.primitive_element()?;
        let e = 1u64 << ((alpha - 1) / 2);
        let d0 = field.pow(lam, e + 1);
        let d1 = field.pow(lam, e);
        gens.push(Mat4([
            d0,
            0,
            0,
            0,
            0,
            d1,
            0,
            0,
            0,
            0,
            field.inv(d1)?,
            0,
            0,
            0,
            0,
            field.inv(d0)?,
        ]));
    }
    gens.push(Mat4([0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0]));
    Ok(GroupSpec::Mat2m {
        alpha,
        modulus: Some(field.modulus()),
        gens,
    })
}

struct SubSet {
    vec: Vec<Element>,
    set: HashSet<Element>,
}

impl SubSet {
    fn trivial(id: Element) -> SubSet {
        SubSet {
            vec: vec![id.clone()],
            set: HashSet::from([id]),
        }
    }

    fn try_insert(&mut self, e: Element, cap: u64) -> Result<bool> {
        if self.set.insert(e.clone()) {
            self.vec.push(e);
            if self.vec.len() as u64 > cap {
                return Err(Error::CapExceeded {
                    found: self.vec.len() as u128,
                });
            }
            return Ok(true);
        }
        Ok(false)
    }

    /// Adjoins one generator and recloses under multiplication. Old elements
    /// are already closed under previously adjoined generators, so they only
    /// need products with the new one; new elements get the full set.
    fn extend_with(
        &mut self,
        ctx: &GroupCtx,
        c: Element,
        gens: &[Element],
        cap: u64,
    ) -> Result<()> {
        let old_len = self.vec.len();
        if !self.try_insert(c.clone(), cap)? {
            return Ok(());
        }
        for i in 0..old_len {
            let y = ctx.mul(&self.vec[i].clone(), &c);
            self.try_insert(y, cap)?;
        }
        let mut head = old_len;
        while head < self.vec.len() {
            let x = self.vec[head].clone();
            head += 1;
            for g in gens {
                let y = ctx.mul(&x, g);
                self.try_insert(y, cap)?;
            }
        }
        Ok(())
    }
}

/// Normal closure of `seeds` under the group generated by `pgens`, together
/// with the sub-list of seeds and conjugates that were actually adjoined
/// (these generate the closure). Closing under conjugation by the parent
/// generators alone is enough: conjugation permutes the finite subgroup.
fn normal_closure(
    ctx: &GroupCtx,
    pgens: &[Element],
    pinv: &[Element],
    seeds: Vec<Element>,
    cap: u64,
) -> Result<(SubSet, Vec<Element>)> {
    let mut sub = SubSet::trivial(ctx.identity());
    let mut queue: VecDeque<Element> = seeds.into();
    let mut added = Vec::new();
    let mut conj_ptr = 0;
    while let Some(c) = queue.pop_front() {
        if sub.set.contains(&c) {
            continue;
        }
        added.push(c.clone());
        sub.extend_with(ctx, c, &added, cap)?;
        while conj_ptr < sub.vec.len() {
            let x = sub.vec[conj_ptr].clone();
            conj_ptr += 1;
            for (g, gi) in pgens.iter().zip(pinv) {
                let y = ctx.mul(&ctx.mul(gi, &x), g);
                if !sub.set.contains(&y) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok((sub, added))
}

/// Derived subgroup of the subgroup generated by `gens`: the normal closure
/// of the pairwise generator commutators.
fn derived_of(ctx: &GroupCtx, gens: &[Element], cap: u64) -> Result<(SubSet, Vec<Element>)> {
    let pinv: Vec<Element> = gens.iter().map(|g| ctx.inv(g)).collect();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if i != j {
                seeds.push(ctx.mul(&ctx.mul(&pinv[i], &pinv[j]), &ctx.mul(a, b)));
            }
        }
    }
    normal_closure(ctx, gens, &pinv, seeds, cap)
}

/// Orders along the derived series, starting from the whole group and
/// stopping at 1 (solvable) or at the first repeat (series stabilized above
/// the trivial group, so not solvable).
pub fn derived_series_orders(spec: &GroupSpec, cap: u64) -> Result<Vec<u64>> {
    let set = enumerate(spec, cap)?;
    let ctx = set.ctx.clone();
    let mut orders = vec![set.order()];
    let mut gens = ctx.gens.clone();
    loop {
        let prev = *orders.last().unwrap();
        if prev == 1 {
            break;
        }
        let (sub, new_gens) = derived_of(&ctx, &gens, cap)?;
        let o = sub.vec.len() as u64;
        orders.push(o);
        if o == prev {
            break;
        }
        gens = new_gens;
    }
    Ok(orders)
}

/// Whether the described group is solvable. The whole group is never
/// materialized; the derived series is followed through normal closures of
/// generator commutators, which stay small for the solvable families here.
pub fn is_solvable(spec: &GroupSpec, cap: u64) -> Result<bool> {
    let ctx = GroupCtx::new(spec)?;
    let mut gens = ctx.gens.clone();
    let mut prev: Option<u64> = None;
    loop {
        let (sub, new_gens) = derived_of(&ctx, &gens, cap)?;
        let o = sub.vec.len() as u64;
        if o == 1 {
            return Ok(true);
        }
        if prev == Some(o) {
            return Ok(false);
        }
        prev = Some(o);
        gens = new_gens;
    }
}
