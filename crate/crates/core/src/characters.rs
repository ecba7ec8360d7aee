//! Dirichlet characters with exact root-of-unity values.
//!
//! A character mod `q` is stored as an exponent vector on a fixed set of
//! generators of `(ℤ/qℤ)*`: the value on generator `i` is
//! `exp(2πi·e_i/order_i)`. The generator set and its discrete-log table are
//! computed once per modulus and shared.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::arith::{self, divisors, factor, gcd, lcm, totient};
use crate::cyclotomic::Cyclotomic;

/// Generators and cyclic-factor orders of `(ℤ/qℤ)*`, plus a discrete-log table.
#[derive(Debug)]
pub struct UnitGroupStructure {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
    /// Exponent of the group (lcm of the orders).
    exponent: u64,
    /// `logs[n * rank + i]` is the log of `n` on generator `i`; `u32::MAX` marks non-units.
    logs: Vec<u32>,
}

impl UnitGroupStructure {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Discrete logarithms of `n` on each generator, or `None` when `gcd(n, q) > 1`.
    pub fn log(&self, n: u64) -> Option<&[u32]> {
        let r = self.rank();
        let n = (n % self.modulus) as usize;
        if r == 0 {
            return if gcd(n as u64, self.modulus) == 1 || self.modulus == 1 {
                Some(&[])
            } else {
                None
            };
        }
        let row = &self.logs[n * r..(n + 1) * r];
        if row[0] == u32::MAX {
            None
        } else {
            Some(row)
        }
    }
}

fn unit_group_cache() -> &'static RwLock<HashMap<u64, Arc<UnitGroupStructure>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<UnitGroupStructure>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn primitive_root_prime_power(p: u64, a: u32) -> u64 {
    let pa = p.pow(a);
    let g = (2..p)
        .find(|&g| arith::multiplicative_order(g, p) == Some(p - 1))
        .unwrap_or(1);
    if a == 1 {
        return g;
    }
    // g or g + p generates mod p^a for every a ≥ 2.
    if arith::pow_mod(g, p - 1, p * p) != 1 {
        g
    } else {
        (g + p) % pa
    }
}

/// Generators of `(ℤ/qℤ)*` via its prime-power decomposition.
///
/// Odd prime powers and `4` contribute one cyclic factor, `2^a` with `a ≥ 3`
/// contributes `⟨−1⟩ × ⟨5⟩`, and `2` contributes nothing.
pub fn unit_group(q: u64) -> Arc<UnitGroupStructure> {
    assert!(q >= 1, "modulus must be positive");
    if let Some(g) = unit_group_cache().read().unwrap().get(&q) {
        return g.clone();
    }
    let built = Arc::new(build_unit_group(q));
    unit_group_cache()
        .write()
        .unwrap()
        .entry(q)
        .or_insert(built)
        .clone()
}

fn build_unit_group(q: u64) -> UnitGroupStructure {
    // (prime power, local generator, order) triples, in the order they appear.
    let mut local: Vec<(u64, u64, u64)> = Vec::new();
    for (p, a) in factor(q) {
        let pa = p.pow(a);
        if p == 2 {
            match a {
                1 => {}
                2 => local.push((pa, 3, 2)),
                _ => {
                    local.push((pa, pa - 1, 2));
                    local.push((pa, 5, pa / 4));
                }
            }
        } else {
            local.push((pa, primitive_root_prime_power(p, a), totient(pa)));
        }
    }
    // Lift each local generator to a residue mod q that is 1 on the other prime-power parts.
    let generators: Vec<u64> = local
        .iter()
        .map(|&(pa, g, _)| {
            let rest = q / pa;
            arith::crt(g % pa, pa, 1 % rest, rest)
        })
        .collect();
    let orders: Vec<u64> = local.iter().map(|&(_, _, o)| o).collect();
    let rank = generators.len();
    let exponent = orders.iter().fold(1, |acc, &o| lcm(acc, o));

    let mut logs = vec![u32::MAX; q as usize * rank.max(1)];
    if rank > 0 {
        // Enumerate g_1^{k_1} ... g_r^{k_r} mod q; each unit appears exactly once.
        let mut idx = vec![0u64; rank];
        loop {
            let mut n = 1u64;
            for i in 0..rank {
                n = (n as u128 * arith::pow_mod(generators[i], idx[i], q) as u128 % q as u128)
                    as u64;
            }
            let row = &mut logs[n as usize * rank..(n as usize + 1) * rank];
            debug_assert_eq!(row[0], u32::MAX, "generators are not independent");
            for i in 0..rank {
                row[i] = idx[i] as u32;
            }
            // odometer increment
            let mut i = rank;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < orders[i] {
                    break;
                }
                idx[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    UnitGroupStructure {
        modulus: q,
        generators,
        orders,
        exponent,
        logs,
    }
}

/// A value of a Dirichlet character: zero or `exp(2πi·num/den)` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharacterValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharacterValue {
    pub const ONE: CharacterValue = CharacterValue::Root { num: 0, den: 1 };

    pub fn root(num: u64, den: u64) -> Self {
        assert!(den >= 1);
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            CharacterValue::ONE
        } else {
            CharacterValue::Root {
                num: num / g,
                den: den / g,
            }
        }
    }

    pub fn minus_one() -> Self {
        CharacterValue::Root { num: 1, den: 2 }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, CharacterValue::Zero)
    }

    pub fn is_one(self) -> bool {
        self == CharacterValue::ONE
    }

    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (CharacterValue::Root { num: a, den: m }, CharacterValue::Root { num: b, den: n }) => {
                let l = lcm(m, n);
                CharacterValue::root(a * (l / m) + b * (l / n), l)
            }
            _ => CharacterValue::Zero,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            CharacterValue::Root { num, den } => CharacterValue::root(den - num, den),
            CharacterValue::Zero => CharacterValue::Zero,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            CharacterValue::Zero => Complex64::new(0.0, 0.0),
            CharacterValue::Root { num, den } => match (num, den) {
                (0, _) => Complex64::new(1.0, 0.0),
                (1, 2) => Complex64::new(-1.0, 0.0),
                (1, 4) => Complex64::new(0.0, 1.0),
                (3, 4) => Complex64::new(0.0, -1.0),
                _ => Complex64::from_polar(1.0, std::f64::consts::TAU * num as f64 / den as f64),
            },
        }
    }

    pub fn to_cyclotomic(self) -> Cyclotomic {
        match self {
            CharacterValue::Zero => Cyclotomic::zero(),
            CharacterValue::Root { num, den } => Cyclotomic::root_of_unity(num, den),
        }
    }

    /// `+1`, `−1`, or `None` if the value is not real (or zero).
    pub fn as_sign(self) -> Option<i32> {
        match self {
            CharacterValue::Root { num: 0, .. } => Some(1),
            CharacterValue::Root { num: 1, den: 2 } => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterValue::Zero => write!(f, "0"),
            CharacterValue::Root { num: 0, .. } => write!(f, "1"),
            CharacterValue::Root { num, den } => write!(f, "e({num}/{den})"),
        }
    }
}

/// A Dirichlet character modulo `q`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    /// Numerator of the value over the group exponent for every residue; `u32::MAX` for non-units.
    table: Arc<Vec<u32>>,
    conductor: u64,
}

impl DirichletCharacter {
    pub fn new(q: u64, exponents: Vec<u64>) -> Self {
        let group = unit_group(q);
        assert_eq!(exponents.len(), group.rank(), "exponent vector length");
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(group.orders.iter())
            .map(|(&e, &o)| e % o)
            .collect();
        let ex = group.exponent();
        let table: Vec<u32> = (0..q)
            .map(|n| match group.log(n) {
                None => u32::MAX,
                Some(logs) => {
                    let mut acc: u128 = 0;
                    for ((&l, &e), &o) in logs.iter().zip(exponents.iter()).zip(group.orders.iter())
                    {
                        acc += l as u128 * e as u128 * (ex / o) as u128;
                    }
                    (acc % ex as u128) as u32
                }
            })
            .collect();
        let mut chi = DirichletCharacter {
            group,
            exponents,
            table: Arc::new(table),
            conductor: q,
        };
        chi.conductor = chi.compute_conductor();
        chi
    }

    pub fn principal(q: u64) -> Self {
        let r = unit_group(q).rank();
        DirichletCharacter::new(q, vec![0; r])
    }

    /// The character mod `q` whose value on generator `i` of `(ℤ/qℤ)*` is `values[i]`.
    pub fn from_generator_values(q: u64, values: &[CharacterValue]) -> Self {
        let group = unit_group(q);
        let exps = values
            .iter()
            .zip(group.orders.iter())
            .map(|(v, &o)| match *v {
                CharacterValue::Root { num, den } => {
                    assert!(o % den == 0, "value is not an order-{o} root of unity");
                    num * (o / den)
                }
                CharacterValue::Zero => panic!("character value on a generator cannot be zero"),
            })
            .collect();
        DirichletCharacter::new(q, exps)
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn unit_group(&self) -> &UnitGroupStructure {
        &self.group
    }

    pub fn evaluate(&self, n: i64) -> CharacterValue {
        let q = self.modulus();
        let r = arith::rem_euclid(n, q);
        let v = self.table[r as usize];
        if v == u32::MAX {
            CharacterValue::Zero
        } else {
            CharacterValue::root(v as u64, self.group.exponent())
        }
    }

    pub fn evaluate_complex(&self, n: i64) -> Complex64 {
        self.evaluate(n).to_complex()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    /// `χ(−1)` as `±1`.
    pub fn parity(&self) -> i32 {
        self.evaluate(-1).as_sign().expect("χ(−1) is ±1")
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.orders.iter())
            .fold(1, |acc, (&e, &o)| lcm(acc, o / gcd(e, o)))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    fn factors_through(&self, f: u64) -> bool {
        let q = self.modulus();
        let mut n = 1u64;
        while n < q {
            if gcd(n, q) == 1 && !self.evaluate(n as i64).is_one() {
                return false;
            }
            n += f;
        }
        true
    }

    fn compute_conductor(&self) -> u64 {
        let mut f = self.modulus();
        'outer: loop {
            for p in arith::prime_divisors(f) {
                if self.factors_through(f / p) {
                    f /= p;
                    continue 'outer;
                }
            }
            return f;
        }
    }

    /// The primitive character mod the conductor inducing `self`.
    pub fn primitivize(&self) -> DirichletCharacter {
        let f = self.conductor;
        if f == self.modulus() {
            return self.clone();
        }
        let q = self.modulus();
        let gf = unit_group(f);
        let values: Vec<CharacterValue> = gf
            .generators
            .iter()
            .map(|&g| {
                let mut n = g;
                while gcd(n, q) != 1 {
                    n += f;
                }
                self.evaluate(n as i64)
            })
            .collect();
        DirichletCharacter::from_generator_values(f, &values)
    }

    /// The character mod `m` (a multiple of the modulus) induced by `self`.
    pub fn induce(&self, m: u64) -> DirichletCharacter {
        assert!(m % self.modulus() == 0, "induce target must be a multiple");
        if m == self.modulus() {
            return self.clone();
        }
        let g = unit_group(m);
        let values: Vec<CharacterValue> =
            g.generators.iter().map(|&x| self.evaluate(x as i64)).collect();
        DirichletCharacter::from_generator_values(m, &values)
    }

    /// Pointwise product, defined modulo `lcm(q1, q2)`.
    pub fn multiply(&self, other: &DirichletCharacter) -> DirichletCharacter {
        let m = lcm(self.modulus(), other.modulus());
        let g = unit_group(m);
        let values: Vec<CharacterValue> = g
            .generators
            .iter()
            .map(|&x| self.evaluate(x as i64).mul(other.evaluate(x as i64)))
            .collect();
        DirichletCharacter::from_generator_values(m, &values)
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.orders.iter())
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        DirichletCharacter::new(self.modulus(), exps)
    }

    /// Whether both characters are induced by the same primitive character.
    pub fn same_primitive(&self, other: &DirichletCharacter) -> bool {
        self.primitivize() == other.primitivize()
    }

    /// Values `χ(0), …, χ(q−1)` as complex numbers.
    pub fn complex_table(&self) -> Vec<Complex64> {
        (0..self.modulus() as i64).map(|n| self.evaluate_complex(n)).collect()
    }

    /// Canonical key `(modulus, exponents)`.
    pub fn key(&self) -> (u64, Vec<u64>) {
        (self.modulus(), self.exponents.clone())
    }

    /// Index in [`enumerate_characters`] order.
    pub fn index(&self) -> usize {
        let mut idx = 0usize;
        for (&e, &o) in self.exponents.iter().zip(self.group.orders.iter()) {
            idx = idx * o as usize + e as usize;
        }
        idx
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.exponents.hash(state);
    }
}

impl PartialOrd for DirichletCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DirichletCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus()
            .cmp(&other.modulus())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ[{}; {:?}]", self.modulus(), self.exponents)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.modulus(), self.index())
    }
}

/// All `φ(q)` characters mod `q`, ordered lexicographically by exponent vector.
/// Index 0 is the principal character.
pub fn enumerate_characters(q: u64) -> Vec<DirichletCharacter> {
    let group = unit_group(q);
    let total = group.order() as usize;
    (0..total)
        .map(|mut idx| {
            let mut exps = vec![0u64; group.rank()];
            for i in (0..group.rank()).rev() {
                let o = group.orders[i] as usize;
                exps[i] = (idx % o) as u64;
                idx /= o;
            }
            DirichletCharacter::new(q, exps)
        })
        .collect()
}

fn primitive_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<DirichletCharacter>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<DirichletCharacter>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Primitive characters mod `q` (conductor exactly `q`), in enumeration order.
pub fn primitive_characters(q: u64) -> Arc<Vec<DirichletCharacter>> {
    if let Some(v) = primitive_cache().read().unwrap().get(&q) {
        return v.clone();
    }
    let v: Vec<DirichletCharacter> = enumerate_characters(q)
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect();
    let arc = Arc::new(v);
    primitive_cache()
        .write()
        .unwrap()
        .entry(q)
        .or_insert(arc)
        .clone()
}

/// The character with the given index in enumeration order.
pub fn character_by_index(q: u64, index: usize) -> Option<DirichletCharacter> {
    let group = unit_group(q);
    if index >= group.order() as usize {
        return None;
    }
    let mut idx = index;
    let mut exps = vec![0u64; group.rank()];
    for i in (0..group.rank()).rev() {
        let o = group.orders[i] as usize;
        exps[i] = (idx % o) as u64;
        idx /= o;
    }
    Some(DirichletCharacter::new(q, exps))
}

/// Number of primitive characters mod `q` by Möbius inversion, `Σ_{f|q} μ(q/f) φ(f)`.
pub fn count_primitive(q: u64) -> i64 {
    divisors(q)
        .into_iter()
        .map(|f| arith::mobius(q / f) * totient(f) as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force table of χ over residues, as `Option<(num, den)>`.
    fn value_table(chi: &DirichletCharacter) -> Vec<CharacterValue> {
        (0..chi.modulus() as i64).map(|n| chi.evaluate(n)).collect()
    }

    #[test]
    fn unit_group_examples() {
        assert!(unit_group(1).generators.is_empty());
        assert!(unit_group(2).generators.is_empty());
        // (Z/8Z)* = {1,3,5,7}, every element squares to 1: two factors of order 2.
        assert_eq!(unit_group(8).orders, vec![2, 2]);
        assert_eq!(unit_group(9).orders, vec![6]);
        for q in 1..=200u64 {
            let g = unit_group(q);
            assert_eq!(g.order(), totient(q), "q = {q}");
            for (&x, &o) in g.generators.iter().zip(g.orders.iter()) {
                assert_eq!(arith::multiplicative_order(x, q), Some(o), "q = {q}");
            }
        }
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for q in 1..=60u64 {
            let chars = enumerate_characters(q);
            assert_eq!(chars.len() as u64, totient(q));
            let mut tables: Vec<Vec<CharacterValue>> = chars.iter().map(value_table).collect();
            tables.sort_by_key(|t| format!("{t:?}"));
            tables.dedup();
            assert_eq!(tables.len() as u64, totient(q), "q = {q}");
            assert!(chars[0].is_principal());
            for (i, c) in chars.iter().enumerate() {
                assert_eq!(c.index(), i);
                assert_eq!(character_by_index(q, i).as_ref(), Some(c));
            }
        }
    }

    #[test]
    fn quadratic_mod_three_and_four() {
        let chars = enumerate_characters(3);
        assert_eq!(chars.len(), 2);
        let chi = &chars[1];
        assert_eq!(chi.evaluate(2), CharacterValue::minus_one());
        assert_eq!(chi.parity(), -1);
        assert_eq!(chars[0].parity(), 1);
        let chi4 = &enumerate_characters(4)[1];
        assert_eq!(chi4.evaluate(3), CharacterValue::minus_one());
    }

    /// Brute-force minimal f: χ(n) = χ(m) whenever n ≡ m (mod f) and both are coprime to q.
    fn conductor_oracle(chi: &DirichletCharacter) -> u64 {
        let q = chi.modulus();
        for f in divisors(q) {
            let ok = (1..q).filter(|&n| gcd(n, q) == 1).all(|n| {
                (1..q)
                    .filter(|&m| gcd(m, q) == 1 && m % f == n % f)
                    .all(|m| chi.evaluate(n as i64) == chi.evaluate(m as i64))
            });
            if ok {
                return f;
            }
        }
        q
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(DirichletCharacter::principal(12).conductor(), 1);
        let chi3 = enumerate_characters(3)[1].clone();
        let lifted = chi3.induce(6);
        assert_eq!(lifted.conductor(), 3);
        assert_eq!(conductor_oracle(&lifted), 3);
        for c in enumerate_characters(5).iter().skip(1) {
            assert_eq!(c.conductor(), 5);
        }
        for q in 1..=48u64 {
            for c in enumerate_characters(q) {
                assert_eq!(c.conductor(), conductor_oracle(&c), "{c:?}");
            }
        }
    }

    #[test]
    fn primitivize_agrees_on_units() {
        for q in 1..=100u64 {
            for c in enumerate_characters(q) {
                let p = c.primitivize();
                assert_eq!(p.modulus(), c.conductor());
                assert!(p.is_primitive());
                assert_eq!(p.conductor(), c.conductor());
                for n in 1..q {
                    if gcd(n, q) == 1 {
                        assert_eq!(p.evaluate(n as i64), c.evaluate(n as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_counts_match_mobius() {
        for q in 1..=100u64 {
            assert_eq!(primitive_characters(q).len() as i64, count_primitive(q), "q = {q}");
        }
    }

    #[test]
    fn orthogonality() {
        for q in 1..=100u64 {
            for c in enumerate_characters(q) {
                let s: Complex64 = (0..q as i64).map(|n| c.evaluate_complex(n)).sum();
                let want = if c.is_principal() { totient(q) as f64 } else { 0.0 };
                assert!((s - Complex64::new(want, 0.0)).norm() < 1e-9, "{c:?}");
            }
        }
    }

    #[test]
    fn products_and_conjugates() {
        for q in [5u64, 8, 12, 15] {
            for c in enumerate_characters(q) {
                let p = c.multiply(&c.conjugate());
                assert!(p.is_principal());
                assert_eq!(p.modulus(), q);
            }
        }
        let a = enumerate_characters(4)[1].clone();
        let b = enumerate_characters(3)[1].clone();
        let ab = a.multiply(&b);
        assert_eq!(ab.modulus(), 12);
        for n in 0..24i64 {
            assert_eq!(ab.evaluate(n), a.evaluate(n).mul(b.evaluate(n)));
        }
        assert_eq!(ab.parity(), 1);
    }
}
