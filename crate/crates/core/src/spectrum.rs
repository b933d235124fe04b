//! Spectra of finite groups as divisibility antichains, their prime graphs,
//! and the four-prime nonsolvability test.
//!
//! The spectrum of a group is the set of its element orders. It is closed
//! under divisors, so we store only the divisibility-maximal elements `mu`,
//! sorted ascending. The trivial group has `mu = [1]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numth::{lcm_checked, prime_set};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    mu: Vec<u128>,
}

impl Spectrum {
    /// Collapses a list of element orders to its divisibility-maximal
    /// antichain. Errors on an empty list or a zero entry.
    pub fn normalize(orders: &[u128]) -> Result<Spectrum> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::EmptySpectrum);
        }
        let distinct: BTreeSet<u128> = orders.iter().copied().collect();
        let mu: Vec<u128> = distinct
            .iter()
            .filter(|&&x| !distinct.iter().any(|&y| y != x && y % x == 0))
            .copied()
            .collect();
        Ok(Spectrum { mu })
    }

    /// Maximal element orders, sorted ascending.
    pub fn mu(&self) -> &[u128] {
        &self.mu
    }

    /// Whether `n` is an element order, i.e. divides some maximal order.
    pub fn contains(&self, n: u128) -> bool {
        n != 0 && self.mu.iter().any(|&m| m % n == 0)
    }

    /// Least common multiple of the spectrum.
    pub fn exponent(&self) -> Result<u128> {
        self.mu
            .iter()
            .try_fold(1u128, |acc, &m| lcm_checked(acc, m))
    }

    /// Spectrum of a direct product: pairwise lcms of the factor spectra,
    /// re-maximalized. Orders in a product are lcms of component orders.
    pub fn lcm_product(&self, other: &Spectrum) -> Result<Spectrum> {
        let mut vals = Vec::with_capacity(self.mu.len() * other.mu.len());
        for &a in &self.mu {
            for &b in &other.mu {
                vals.push(lcm_checked(a, b)?);
            }
        }
        Spectrum::normalize(&vals)
    }

    /// Distinct primes dividing some element order, ascending.
    pub fn primes(&self) -> Result<Vec<u128>> {
        let mut set = BTreeSet::new();
        for &m in &self.mu {
            set.extend(prime_set(m)?);
        }
        Ok(set.into_iter().collect())
    }

    /// Graph on the primes of the spectrum, with an edge p -- q exactly when
    /// pq is an element order.
    pub fn prime_graph(&self) -> Result<PrimeGraph> {
        let vertices = self.primes()?;
        let mut edges = BTreeSet::new();
        for (i, &p) in vertices.iter().enumerate() {
            for &q in &vertices[i + 1..] {
                if let Some(pq) = p.checked_mul(q) {
                    if self.contains(pq) {
                        edges.insert((p, q));
                    }
                }
            }
        }
        Ok(PrimeGraph { vertices, edges })
    }

    /// Largest number of primes dividing a single element order.
    pub fn alpha_invariant(&self) -> Result<u32> {
        let mut best = 0;
        for &m in &self.mu {
            best = best.max(prime_set(m)?.len() as u32);
        }
        Ok(best)
    }

    /// Zhang's bound for solvable groups: the number of primes in the
    /// spectrum is at most a(a + 3) / 2, where a is [`alpha_invariant`].
    ///
    /// [`alpha_invariant`]: Spectrum::alpha_invariant
    pub fn higman_bound_holds(&self) -> Result<bool> {
        let a = self.alpha_invariant()? as u64;
        let count = self.primes()?.len() as u64;
        Ok(count <= a * (a + 3) / 2)
    }

    /// Searches for four distinct primes whose six pairwise products are all
    /// element orders while none of the four triple products is. Any group
    /// admitting such a quadruple is nonsolvable. Returns the
    /// lexicographically least witness, or `None` (in particular whenever
    /// fewer than four primes divide the spectrum).
    pub fn nonsolvability_criterion(&self) -> Result<Option<CriterionWitness>> {
        let primes = self.primes()?;
        let n = primes.len();
        if n < 4 {
            return Ok(None);
        }
        let in_omega = |a: u128, b: u128, c: u128| -> bool {
            a.checked_mul(b)
                .and_then(|ab| ab.checked_mul(c))
                .is_some_and(|abc| self.contains(abc))
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let s = [primes[i], primes[j], primes[k], primes[l]];
                        let pairs_in = (0..4).all(|x| (x + 1..4).all(|y| in_omega(s[x], s[y], 1)));
                        if !pairs_in {
                            continue;
                        }
                        let triple_free = (0..4).all(|x| {
                            let t: Vec<u128> = (0..4).filter(|&y| y != x).map(|y| s[y]).collect();
                            !in_omega(t[0], t[1], t[2])
                        });
                        if triple_free {
                            return Ok(Some(CriterionWitness { primes: s }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Two groups are isospectral when their maximal order lists coincide.
    pub fn isospectral(&self, other: &Spectrum) -> bool {
        self.mu == other.mu
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in &self.mu {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Spectrum {
    type Err = Error;

    /// Parses a comma-separated list of decimal orders and normalizes it.
    fn from_str(s: &str) -> Result<Spectrum> {
        let orders = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u128>()
                    .map_err(|_| Error::SpecParse(format!("bad order {t:?}")))
            })
            .collect::<Result<Vec<u128>>>()?;
        Spectrum::normalize(&orders)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.mu.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Spectrum, D::Error> {
        let orders = Vec::<u128>::deserialize(de)?;
        Spectrum::normalize(&orders).map_err(D::Error::custom)
    }
}

/// Compatibility graph of the primes of a spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    vertices: Vec<u128>,
    edges: BTreeSet<(u128, u128)>,
}

impl PrimeGraph {
    pub fn vertices(&self) -> &[u128] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (u128, u128)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, p: u128, q: u128) -> bool {
        self.edges.contains(&(p.min(q), p.max(q)))
    }

    /// Graphviz rendering with primes as node names.
    pub fn dot(&self) -> String {
        let mut out = String::from("graph GK {\n");
        for v in &self.vertices {
            out.push_str(&format!("  {v};\n"));
        }
        for (p, q) in &self.edges {
            out.push_str(&format!("  {p} -- {q};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Exact maximum independent set ("coclique"): returns its size and the
    /// lexicographically least witness of that size. Limited to 64 vertices.
    pub fn max_coclique(&self) -> Result<(usize, Vec<u128>)> {
        let n = self.vertices.len();
        if n > 64 {
            return Err(Error::VertexBudget(n));
        }
        if n == 0 {
            return Ok((0, Vec::new()));
        }
        let mut nbr = vec![0u64; n];
        for (i, &p) in self.vertices.iter().enumerate() {
            for (j, &q) in self.vertices.iter().enumerate() {
                if i != j && self.has_edge(p, q) {
                    nbr[i] |= 1 << j;
                }
            }
        }
        let full: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
        let mut memo = std::collections::HashMap::new();
        let size = mis_size(full, &nbr, &mut memo);
        // grow the witness smallest-prime-first, keeping the target reachable
        let mut witness = Vec::with_capacity(size as usize);
        let mut cand = full;
        let mut need = size;
        for v in 0..n {
            if cand >> v & 1 == 0 {
                continue;
            }
            let above: u64 = full & !((1u64 << v) | ((1u64 << v) - 1));
            let rest = cand & !nbr[v] & above;
            if 1 + mis_size(rest, &nbr, &mut memo) >= need {
                witness.push(self.vertices[v]);
                cand = rest;
                need -= 1;
                if need == 0 {
                    break;
                }
            } else {
                cand &= !(1u64 << v);
            }
        }
        debug_assert_eq!(witness.len(), size as usize);
        Ok((size as usize, witness))
    }
}

fn mis_size(mask: u64, nbr: &[u64], memo: &mut std::collections::HashMap<u64, u32>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let v = mask.trailing_zeros() as usize;
    let without = mis_size(mask & !(1 << v), nbr, memo);
    let with = 1 + mis_size(mask & !(1 << v) & !nbr[v], nbr, memo);
    let best = without.max(with);
    memo.insert(mask, best);
    best
}

/// Four primes certifying nonsolvability: all six pairwise products are
/// element orders, none of the four triple products is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionWitness {
    primes: [u128; 4],
}

impl CriterionWitness {
    pub fn new(mut primes: [u128; 4]) -> CriterionWitness {
        primes.sort_unstable();
        CriterionWitness { primes }
    }

    pub fn primes(&self) -> [u128; 4] {
        self.primes
    }

    /// A sharper side condition: no witness prime divides another witness
    /// prime minus one. Reported alongside the criterion for comparison.
    pub fn gm_condition(&self) -> bool {
        for &p in &self.primes {
            for &q in &self.primes {
                if p != q && (q - 1) % p == 0 {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for CriterionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.primes[0], self.primes[1], self.primes[2], self.primes[3]
        )
    }
}
