//! Scalar invariants of a special cover read off from its type: upper
//! jumps, conductors, disk radii, the monodromy order and the degree of
//! the field of moduli. Rationals are exact, valuations normalized by
//! `v(p) = 1`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::degen::{check_admissible, check_nu};
use crate::tree::{edge_invariants, star_tree, Thickness};

pub type Rational = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    Inadmissible(String),
    /// `p` divides the conductor at `index`.
    WildConductor { index: usize, h: i64 },
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::Inadmissible(s) => write!(f, "inadmissible input: {s}"),
            InvariantError::WildConductor { index, h } => {
                write!(f, "conductor h_{index} = {h} is divisible by p")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InvariantError {}

fn check_label(a: u64, m: u64) -> Result<(), InvariantError> {
    if m < 2 || a == 0 || a >= m {
        return Err(InvariantError::Inadmissible(alloc::format!("a = {a} is not in (0, {m})")));
    }
    Ok(())
}

/// `nu + a/m`.
pub fn sigma(a: u64, nu: i64, m: u64) -> Rational {
    Ratio::from_integer(nu) + Ratio::new(a as i64, m as i64)
}

/// `sum (1 - sigma_i)` and whether it equals `2`.
pub fn vanishing_cycle_check(a: &[u64], nu: &[i64], m: u64) -> (bool, Rational) {
    assert_eq!(a.len(), nu.len(), "lengths differ");
    let total: Rational = a.iter().zip(nu).map(|(&x, &n)| Ratio::from_integer(1) - sigma(x, n, m)).sum();
    (total == Ratio::from_integer(2), total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conductor {
    pub h: i64,
    /// `m / gcd(a, m)`.
    pub m_i: u64,
    /// `a / gcd(a, m)`.
    pub a_tilde: u64,
    /// `h = a_tilde mod m_i`.
    pub congruence: bool,
    pub prime_to_p: bool,
}

/// `h = (nu m + a) / gcd(a, m)` with its congruence certificate. Fails when
/// `p | h`.
pub fn conductor(a: u64, nu: i64, m: u64, p: u64) -> Result<Conductor, InvariantError> {
    check_label(a, m)?;
    let g = a.gcd(&m);
    let h = crate::tree::conductor_of(a, nu, m).expect("gcd divides both terms");
    let (m_i, a_tilde) = (m / g, a / g);
    let c = Conductor {
        h,
        m_i,
        a_tilde,
        congruence: h.rem_euclid(m_i as i64) == (a_tilde % m_i) as i64,
        prime_to_p: h.rem_euclid(p as i64) != 0,
    };
    if !c.prime_to_p {
        return Err(InvariantError::WildConductor { index: 0, h });
    }
    Ok(c)
}

/// `p m_i / ((p - 1) h)`, a lower bound for `v(x - x_i)` on the disk of the
/// tail at `x_i`.
pub fn disk_radius(p: u64, a: u64, nu: i64, m: u64) -> Result<Rational, InvariantError> {
    let c = conductor(a, nu, m, p)?;
    if c.h <= 0 {
        return Err(InvariantError::Inadmissible(alloc::format!("conductor {} is not positive", c.h)));
    }
    Ok(Ratio::new((p * c.m_i) as i64, (p as i64 - 1) * c.h))
}

/// `(m lcm(h_i), [h_i (p-1) / m_i])`: the order of the monodromy group and
/// the orders of its action on the tails, for branch points rational over
/// the base.
pub fn monodromy(p: u64, m: u64, a: &[u64], nu: &[i64]) -> Result<(u64, Vec<u64>), InvariantError> {
    let mut l = 1u64;
    let mut tails = Vec::with_capacity(a.len());
    for (i, (&x, &n)) in a.iter().zip(nu).enumerate() {
        let c = conductor(x, n, m, p).map_err(|e| match e {
            InvariantError::WildConductor { h, .. } => InvariantError::WildConductor { index: i + 1, h },
            e => e,
        })?;
        let h = u64::try_from(c.h).map_err(|_| InvariantError::Inadmissible(alloc::format!("h_{} < 0", i + 1)))?;
        l = l.lcm(&h);
        let num = h * (p - 1);
        assert_eq!(num % c.m_i, 0, "m_i divides p - 1");
        tails.push(num / c.m_i);
    }
    Ok((m * l, tails))
}

/// `(p - 1) / m`.
pub fn moduli_degree(p: u64, m: u64) -> Result<u64, InvariantError> {
    if m == 0 || (p - 1) % m != 0 {
        return Err(InvariantError::Inadmissible(alloc::format!("m = {m} does not divide p - 1 = {}", p - 1)));
    }
    Ok((p - 1) / m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexInvariants {
    pub sigma: Rational,
    pub m_i: u64,
    pub a_tilde: u64,
    pub h: i64,
    /// `sigma` recomputed as `h / m_i`.
    pub sigma_from_h: Rational,
    pub congruence: bool,
    pub disk_radius: Rational,
    /// Base thickness at the tail edge of the star tree, from the
    /// conductor-thickness chain. Differs from `disk_radius` unless
    /// `a_tilde = m_i`.
    pub chain_thickness: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub p: u64,
    pub m: u64,
    pub a: Vec<u64>,
    pub nu: Vec<i64>,
    pub per_index: Vec<IndexInvariants>,
    pub vanishing_cycle_ok: bool,
    pub vanishing_cycle_sum: Rational,
    pub monodromy_order: u64,
    pub tail_action_orders: Vec<u64>,
    pub moduli_degree: u64,
    /// The monodromy values presuppose branch points rational over the
    /// base field, which a characteristic-`p` datum cannot certify.
    pub assumes_rational_branch_points: bool,
}

impl InvariantReport {
    /// All internal cross-checks: `sigma = h / m_i`, the congruence, the
    /// vanishing cycle sum, and `m, h_i | |Gamma|` prime to `p`.
    pub fn consistent(&self) -> bool {
        let g = self.monodromy_order;
        self.vanishing_cycle_ok
            && self.per_index.iter().all(|x| x.sigma == x.sigma_from_h && x.congruence && g % x.h as u64 == 0)
            && g % self.m == 0
            && g % self.p != 0
    }
}

pub fn invariant_report(p: u64, m: u64, a: &[u64], nu: &[i64]) -> Result<InvariantReport, InvariantError> {
    let inadmissible = |e: crate::degen::DegenError| InvariantError::Inadmissible(e.to_string());
    check_admissible(p, m, a, None).map_err(inadmissible)?;
    check_nu(nu, a.len()).map_err(inadmissible)?;
    let (monodromy_order, tail_action_orders) = monodromy(p, m, a, nu)?;
    let star = star_tree(a.len(), a, nu, m).map_err(|e| InvariantError::Inadmissible(e.to_string()))?;
    let edges = edge_invariants(&star, p).map_err(|e| InvariantError::Inadmissible(e.to_string()))?;
    let mut per_index = Vec::with_capacity(a.len());
    for (i, (&x, &n)) in a.iter().zip(nu).enumerate() {
        let c = conductor(x, n, m, p)?;
        let chain_thickness = match edges[2 * i].base_thickness {
            Thickness::Exact(t) => t,
            other => panic!("star tail edge has thickness {other}"),
        };
        per_index.push(IndexInvariants {
            sigma: sigma(x, n, m),
            m_i: c.m_i,
            a_tilde: c.a_tilde,
            h: c.h,
            sigma_from_h: Ratio::new(c.h, c.m_i as i64),
            congruence: c.congruence,
            disk_radius: disk_radius(p, x, n, m)?,
            chain_thickness,
        });
    }
    let (vanishing_cycle_ok, vanishing_cycle_sum) = vanishing_cycle_check(a, nu, m);
    Ok(InvariantReport {
        p,
        m,
        a: a.to_vec(),
        nu: nu.to_vec(),
        per_index,
        vanishing_cycle_ok,
        vanishing_cycle_sum,
        monodromy_order,
        tail_action_orders,
        moduli_degree: moduli_degree(p, m)?,
        assumes_rational_branch_points: true,
    })
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}, m = {}, moduli degree {}", self.p, self.m, self.moduli_degree)?;
        writeln!(f, "{:>3} {:>3} {:>3} {:>7} {:>4} {:>4} {:>4} {:>8} {:>8}", "i", "a", "nu", "sigma", "m_i", "a~", "h", "radius", "chain")?;
        for (i, x) in self.per_index.iter().enumerate() {
            writeln!(
                f,
                "{:>3} {:>3} {:>3} {:>7} {:>4} {:>4} {:>4} {:>8} {:>8}",
                i + 1,
                self.a[i],
                self.nu[i],
                x.sigma.to_string(),
                x.m_i,
                x.a_tilde,
                x.h,
                x.disk_radius.to_string(),
                x.chain_thickness.to_string()
            )?;
        }
        writeln!(f, "vanishing cycle sum {} ({})", self.vanishing_cycle_sum, if self.vanishing_cycle_ok { "ok" } else { "FAILED" })?;
        let tails: Vec<String> = self.tail_action_orders.iter().map(u64::to_string).collect();
        writeln!(f, "monodromy order {}, tail actions ({})", self.monodromy_order, tails.join(", "))?;
        write!(f, "assumes branch points rational over the base: {}", self.assumes_rational_branch_points)
    }
}
