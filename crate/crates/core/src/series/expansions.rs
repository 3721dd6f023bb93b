//! Expansions of Funk quantities at the point `(0, x₂)` of a normalized
//! domain, whose boundary near the origin is the graph `x₂ = f(x₁)` with
//! `f(0) = f′(0) = 0`, and of the curvatures of the forward sphere through
//! that point, for which `x₂ = e^{−r}` and `s = e^{−r/2}`.

use std::f64::consts::SQRT_2;

use num_rational::BigRational;
use serde::Serialize;

use super::solve::{residual, solve_branch};
use super::{Coeff, HalfPowerSeries, SeriesView, Surd, EXACT};
use crate::error::{FunkError, Result};
use crate::jet::factorial;

/// Half-powers kept beyond the leading term of every reported series.
pub const DEFAULT_ORDER: i32 = 8;
/// Extra orders carried internally to absorb losses in divisions.
const GUARD: i32 = 16;

/// Derivatives `f^(k)(0)`, `k ≥ 2`, of the boundary graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphJets<C> {
    derivs: Vec<C>,
    /// Whether derivatives past the last given one are unknown rather than
    /// zero.
    truncated: bool,
}

impl<C: Coeff> GraphJets<C> {
    /// `derivs[i] = f^(i+2)(0)`; derivatives that are not given are zero, so
    /// the boundary is the polynomial they define.
    pub fn new(derivs: Vec<C>) -> Self {
        Self {
            derivs,
            truncated: false,
        }
    }

    /// Jets of a general boundary: series are only reported as far as the
    /// given derivatives determine them.
    pub fn truncated(derivs: Vec<C>) -> Self {
        Self {
            derivs,
            truncated: true,
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// `f″(0) = 1/2` with the given third and fourth derivatives.
    pub fn normalized(f3: C, f4: C) -> Self {
        Self::new(vec![C::ratio(1, 2), f3, f4])
    }

    /// Appends `f^(5)(0), f^(6)(0), …`.
    pub fn with_higher(mut self, higher: impl IntoIterator<Item = C>) -> Self {
        self.derivs.truncate(3);
        self.derivs.extend(higher);
        self
    }

    pub fn derivative(&self, k: usize) -> C {
        if k < 2 {
            return C::zero();
        }
        self.derivs.get(k - 2).cloned().unwrap_or_else(C::zero)
    }

    pub fn max_order(&self) -> usize {
        self.derivs.len() + 1
    }

    /// Taylor coefficient `f^(k)(0)/k!`.
    fn taylor(&self, k: usize) -> C {
        self.derivative(k) / C::from_f64(factorial(k))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GraphJets<D> {
        GraphJets {
            derivs: self.derivs.iter().map(f).collect(),
            truncated: self.truncated,
        }
    }

    /// `Σ_k c_k f^(k)(0)/(k − j)! · z^(k − j)`: the `j`-th derivative of
    /// the graph at `z`.
    fn graph_derivative_at(&self, z: &HalfPowerSeries<C>, j: usize) -> HalfPowerSeries<C> {
        let mut acc = HalfPowerSeries::zero(EXACT);
        for k in (j.max(2)..=self.max_order()).rev() {
            let c = self.derivative(k) / C::from_f64(factorial(k - j));
            acc = &(&acc * z) + &HalfPowerSeries::constant(c);
        }
        // Horner above multiplied by z once per degree from max_order down
        // to j.max(2); the terms below degree 2 vanish
        let missing = j.max(2) - j;
        for _ in 0..missing {
            acc = &acc * z;
        }
        if self.truncated {
            // unknown terms start at z^(max_order + 1 − j)
            let first = z.valuation() * (self.max_order() + 1 - j) as i32;
            acc = acc.truncate(first - 1);
        }
        acc
    }
}

/// `+1` for the ray towards `(1, 0)`, `−1` towards `(−1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Plus,
    Minus,
}

fn half<C: Coeff>() -> C {
    C::ratio(1, 2)
}

/// The hit abscissa of the horizontal ray from `(0, s²)`, as a signed
/// series: it solves `f(t) = s²` with `t = ±2s + …` for `f″(0) = 1/2`.
pub fn solve_ray_series<C: Coeff>(jets: &GraphJets<C>, direction: Direction, order: i32) -> Result<HalfPowerSeries<C>> {
    let f2 = jets.derivative(2);
    if !(f2.to_f64() > 0.0) {
        return Err(FunkError::NoRealBranch(f2.to_f64()));
    }
    // t = s U:  Σ_k f_k/k! s^(k−2) U^k − 1 = 0
    let mut one = HalfPowerSeries::constant(-C::one());
    if jets.truncated {
        one = one.truncate(jets.max_order() as i32 - 2);
    }
    let mut coeffs = vec![one, HalfPowerSeries::zero(EXACT)];
    for k in 2..=jets.max_order() {
        coeffs.push(HalfPowerSeries::monomial(k as i32 - 2, jets.taylor(k)));
    }
    let u0 = (C::one() / jets.taylor(2)).sqrt().ok_or(FunkError::NoSquareRoot)?;
    let u0 = match direction {
        Direction::Plus => u0,
        Direction::Minus => -u0,
    };
    Ok(solve_branch(&coeffs, u0, order)?.shift(1))
}

/// Expansions at `(0, s²)` in direction `(1, 0)` and along the forward
/// sphere through that point.
#[derive(Clone, Debug)]
pub struct FunkSeries<C> {
    pub t_plus: HalfPowerSeries<C>,
    pub t_minus: HalfPowerSeries<C>,
    pub theta_tangent: HalfPowerSeries<C>,
    pub t_x2: HalfPowerSeries<C>,
    pub t_x2x2: HalfPowerSeries<C>,
    pub theta_x1: HalfPowerSeries<C>,
    pub theta_x2: HalfPowerSeries<C>,
    pub g11: HalfPowerSeries<C>,
    pub g12: HalfPowerSeries<C>,
    pub g22: HalfPowerSeries<C>,
    /// Arc-length acceleration `∇ċċ` of the sphere.
    pub accel: [HalfPowerSeries<C>; 2],
    pub kn_inner: HalfPowerSeries<C>,
    pub kn_outer: HalfPowerSeries<C>,
    pub kf2: HalfPowerSeries<C>,
    pub kf: HalfPowerSeries<C>,
    /// Largest residual of the ray equation over both branches.
    pub ray_residual: f64,
}

/// Hit parameters of the acceleration ray and the Rund curvature.
#[derive(Clone, Debug)]
pub struct RundSeries<C> {
    /// Parameter along `∇ċċ`.
    pub t1: HalfPowerSeries<C>,
    /// Parameter along `−∇ċċ`.
    pub t2: HalfPowerSeries<C>,
    pub kr: HalfPowerSeries<C>,
    pub residual: f64,
}

fn ray_residual<C: Coeff>(jets: &GraphJets<C>, t: &HalfPowerSeries<C>) -> f64 {
    // f(t) − s² as a polynomial in t with constant coefficients
    let mut coeffs = vec![HalfPowerSeries::monomial(2, -C::one()), HalfPowerSeries::zero(EXACT)];
    for k in 2..=jets.max_order() {
        coeffs.push(HalfPowerSeries::constant(jets.taylor(k)));
    }
    residual(&coeffs, t)
}

/// All expansions through `order` half-powers beyond their leading terms.
/// `support_height` is the height of the horizontal supporting line
/// opposite the origin.
pub fn funk_series<C: Coeff>(jets: &GraphJets<C>, support_height: C, order: i32) -> Result<FunkSeries<C>> {
    let work = order + GUARD;
    let t_plus = solve_ray_series(jets, Direction::Plus, work)?;
    let t_minus = solve_ray_series(jets, Direction::Minus, work)?;

    let theta = t_plus.reciprocal()?;
    let fp = jets.graph_derivative_at(&t_plus, 1);
    let fpp = jets.graph_derivative_at(&t_plus, 2);
    let t_x2 = fp.reciprocal()?;
    let t_x2x2 = -(&fpp * &t_x2.powi(3));
    let theta2 = &theta * &theta;
    let theta_x1 = theta2.clone();
    let theta_x2 = -(&t_x2 * &theta2);
    let g11 = theta2.clone();
    let g12 = theta_x2.clone();
    let g22 = &(&t_x2.powi(2) * &theta2) - &(&t_x2x2 * &theta);

    // sphere point (0, s²), c′ = (1 − s², 0), c″ = (0, (1 − s²)/2)
    let one_m = HalfPowerSeries::polynomial(vec![C::one(), C::zero(), -C::one()]);
    let c2 = one_m.scale(&half());
    let th = &one_m * &theta;
    let inv_th2 = (&th * &th).reciprocal()?;
    let nab1 = &th * &one_m;
    let gdot = &one_m * &(&(&g11 * &nab1) + &(&g12 * &c2));
    let k = &th - &(&gdot * &inv_th2);
    let acc1 = &(&one_m * &k) * &inv_th2;
    let acc2 = &c2 * &inv_th2;
    let kf2 = &(&(&g11 * &acc1.powi(2)) + &(&g12 * &(&acc1 * &acc2)).scale(&C::from_i64(2))) + &(&g22 * &acc2.powi(2));
    let kf = kf2.sqrt()?;
    let kn_outer = -(&c2 * &inv_th2).shift(-2);
    let gap = HalfPowerSeries::polynomial(vec![support_height, C::zero(), -C::one()]);
    let kn_inner = &(&c2 * &inv_th2) * &gap.reciprocal()?;

    let cut = |a: HalfPowerSeries<C>| -> Result<HalfPowerSeries<C>> {
        let keep = a.valuation() + order;
        if a.trunc() < keep {
            return Err(FunkError::SingularBranch("series lost too many orders"));
        }
        Ok(a.truncate(keep))
    };
    let (t_plus, t_minus) = (cut(t_plus)?, cut(t_minus)?);
    let ray_residual = ray_residual(jets, &t_plus).max(ray_residual(jets, &t_minus));
    Ok(FunkSeries {
        t_plus,
        t_minus,
        theta_tangent: cut(theta)?,
        t_x2: cut(t_x2)?,
        t_x2x2: cut(t_x2x2)?,
        theta_x1: cut(theta_x1)?,
        theta_x2: cut(theta_x2)?,
        g11: cut(g11)?,
        g12: cut(g12)?,
        g22: cut(g22)?,
        accel: [cut(acc1)?, cut(acc2)?],
        kn_inner: cut(kn_inner)?,
        kn_outer: cut(kn_outer)?,
        kf2: cut(kf2)?,
        kf: cut(kf)?,
        ray_residual,
    })
}

/// Solves for the boundary hits of the rays from `(0, s²)` along `±∇ċċ`,
/// with `∇ċċ = (s a, s² b)`:
/// `Σ_k f_k/k! s^(k−2) a^k τ^k − 1 − b τ = 0`.
pub fn rund_series<C: Coeff>(
    jets: &GraphJets<C>,
    accel: &[HalfPowerSeries<C>; 2],
    order: i32,
) -> Result<RundSeries<C>> {
    let a = accel[0].shift(-1);
    let b = accel[1].shift(-2);
    let mut coeffs = vec![HalfPowerSeries::constant(-C::one()), -&b];
    let mut ak = a.clone();
    for k in 2..=jets.max_order() {
        ak = &ak * &a;
        coeffs.push(ak.scale(&jets.taylor(k)).shift(k as i32 - 2));
    }
    let a0 = a.coeff(0).ok_or(FunkError::SingularBranch("acceleration unknown"))?;
    let b0 = b.coeff(0).ok_or(FunkError::SingularBranch("acceleration unknown"))?;
    let quad = jets.taylor(2) * a0.clone() * a0;
    let disc = b0.clone() * b0.clone() + C::from_i64(4) * quad.clone();
    let root = disc.sqrt().ok_or(FunkError::NoSquareRoot)?;
    let two_q = quad.clone() + quad;
    let plus = (b0.clone() + root.clone()) / two_q.clone();
    let minus = (b0 - root) / two_q;
    let t1 = solve_branch(&coeffs, plus, order + GUARD)?;
    let t2 = solve_branch(&coeffs, minus, order + GUARD)?;
    let residual = residual(&coeffs, &t1).max(residual(&coeffs, &t2));
    let kr = t1.reciprocal()?;
    let keep = |a: HalfPowerSeries<C>| {
        let n = a.valuation() + order;
        a.truncate(n)
    };
    Ok(RundSeries {
        t1: keep(t1),
        t2: keep(-t2),
        kr: keep(kr),
        residual,
    })
}

/// Reported quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    TPlus,
    TMinus,
    ThetaTangent,
    TX2,
    TX2X2,
    ThetaX1,
    ThetaX2,
    G11,
    G12,
    G22,
    Accel1,
    Accel2,
    KnInner,
    KnOuter,
    Kf2,
    Kf,
    T1,
    T2,
    Kr,
}

impl Quantity {
    pub const ALL: [Quantity; 19] = [
        Quantity::TPlus,
        Quantity::TMinus,
        Quantity::ThetaTangent,
        Quantity::TX2,
        Quantity::TX2X2,
        Quantity::ThetaX1,
        Quantity::ThetaX2,
        Quantity::G11,
        Quantity::G12,
        Quantity::G22,
        Quantity::Accel1,
        Quantity::Accel2,
        Quantity::KnInner,
        Quantity::KnOuter,
        Quantity::Kf2,
        Quantity::Kf,
        Quantity::T1,
        Quantity::T2,
        Quantity::Kr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::TPlus => "t_plus",
            Quantity::TMinus => "t_minus",
            Quantity::ThetaTangent => "theta_tangent",
            Quantity::TX2 => "t_x2",
            Quantity::TX2X2 => "t_x2x2",
            Quantity::ThetaX1 => "theta_x1",
            Quantity::ThetaX2 => "theta_x2",
            Quantity::G11 => "g11",
            Quantity::G12 => "g12",
            Quantity::G22 => "g22",
            Quantity::Accel1 => "accel1",
            Quantity::Accel2 => "accel2",
            Quantity::KnInner => "kn_inner",
            Quantity::KnOuter => "kn_outer",
            Quantity::Kf2 => "kf2",
            Quantity::Kf => "kf",
            Quantity::T1 => "t1",
            Quantity::T2 => "t2",
            Quantity::Kr => "kr",
        }
    }

    pub fn parse(name: &str) -> Option<Quantity> {
        let key = name.to_ascii_lowercase().replace('-', "_");
        Quantity::ALL.into_iter().find(|q| q.name() == key)
    }
}

/// Published expansion of a quantity: displayed coefficients and the
/// order of the stated remainder.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PublishedExpansion {
    /// `(power of s, value)`; `None` where the printed expression is not real.
    pub terms: Vec<(i32, Option<f64>)>,
    /// The remainder is stated as `O(s^remainder)`.
    pub remainder: Option<i32>,
}

/// Printed coefficients that an independent derivation does not reproduce.
/// They are checked against the numeric pipeline instead.
pub const MISPRINTED: [(Quantity, i32); 12] = [
    (Quantity::ThetaTangent, 0),
    (Quantity::ThetaTangent, 1),
    (Quantity::TX2, 1),
    (Quantity::TX2X2, -1),
    (Quantity::ThetaX2, -1),
    (Quantity::G12, -1),
    (Quantity::Accel1, 2),
    (Quantity::KnOuter, 1),
    (Quantity::KnOuter, 2),
    (Quantity::T1, 1),
    (Quantity::T2, 1),
    (Quantity::Kr, 1),
];

pub fn is_misprinted(q: Quantity, power: i32) -> bool {
    MISPRINTED.contains(&(q, power))
}

/// The expansion as published, in terms of `f‴(0)`, `f⁗(0)` and the
/// support height `h`.
pub fn published(q: Quantity, f3: f64, f4: f64, h: f64) -> PublishedExpansion {
    let root = (2.0 * f3 >= 0.0).then(|| (2.0 * f3).sqrt());
    let (terms, remainder): (Vec<(i32, Option<f64>)>, Option<i32>) = match q {
        Quantity::TPlus => (vec![(1, Some(2.0)), (2, Some(-4.0 * f3 / 3.0))], Some(4)),
        Quantity::TMinus => (vec![(1, Some(-2.0)), (2, Some(-4.0 * f3 / 3.0))], Some(4)),
        Quantity::ThetaTangent => (
            vec![(-1, Some(0.5)), (0, Some(f3 / 2.0)), (1, Some(2.0 * f3 * f3 / 9.0))],
            Some(2),
        ),
        Quantity::TX2 => (
            vec![(-1, Some(1.0)), (0, Some(-4.0 * f3 / 3.0)), (1, Some(40.0 * f3 * f3 / 9.0))],
            Some(2),
        ),
        Quantity::TX2X2 => (vec![(-3, Some(-0.5)), (-1, Some(-2.0 * f4))], Some(0)),
        Quantity::ThetaX1 | Quantity::G11 => (vec![(-2, Some(0.25)), (-1, Some(f3 / 3.0))], Some(0)),
        Quantity::ThetaX2 | Quantity::G12 => (vec![(-3, Some(-0.25)), (-1, Some(-f3 * f3))], Some(0)),
        Quantity::G22 => (vec![(-4, Some(0.5)), (-3, Some(-f3 / 6.0))], Some(2)),
        Quantity::Accel1 => (vec![(1, Some(2.0)), (2, Some(16.0 * f3 / 3.0))], Some(3)),
        Quantity::Accel2 => (vec![(2, Some(2.0))], Some(3)),
        Quantity::KnInner => (vec![(2, Some(2.0 / h)), (3, Some(-8.0 * f3 / (3.0 * h)))], Some(4)),
        Quantity::KnOuter => (
            vec![(0, Some(-2.0)), (1, Some(-8.0 * f3 / 3.0)), (2, Some(8.0 * f3 * f3 / 9.0))],
            Some(4),
        ),
        Quantity::Kf2 => (vec![(0, Some(1.0)), (1, Some(-2.0 * f3))], Some(2)),
        Quantity::Kf => (Vec::new(), None),
        Quantity::T1 => (
            vec![(0, Some(1.0 + SQRT_2)), (1, root.map(|r| (10.0 * f3 + 7.0 * r) / 3.0))],
            Some(2),
        ),
        Quantity::T2 => (
            vec![(0, Some(SQRT_2 - 1.0)), (1, root.map(|r| (10.0 * f3 - 7.0 * r) / 3.0))],
            Some(2),
        ),
        Quantity::Kr => (
            vec![
                (0, Some(SQRT_2 - 1.0)),
                (1, Some(-(10.0 + 7.0 * SQRT_2) * f3 / (9.0 + 6.0 * SQRT_2))),
            ],
            Some(2),
        ),
    };
    PublishedExpansion { terms, remainder }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceTerm {
    pub power: i32,
    pub published: Option<f64>,
    pub computed: f64,
    pub misprinted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub quantity: Quantity,
    pub computed: SeriesView,
    pub reference: Vec<ReferenceTerm>,
    /// Largest difference over published terms that are not misprinted.
    pub max_abs_coeff_diff: f64,
    /// Whether every computed term between the last published one and the
    /// stated remainder vanishes.
    pub remainder_consistent: bool,
}

impl ExpansionReport {
    pub fn new<C: Coeff>(q: Quantity, computed: &HalfPowerSeries<C>, f3: f64, f4: f64, h: f64) -> Self {
        let pubd = published(q, f3, f4, h);
        let value = |k: i32| computed.coeff(k).map(|c| c.to_f64()).unwrap_or(f64::NAN);
        let reference: Vec<ReferenceTerm> = pubd
            .terms
            .iter()
            .map(|&(power, published)| ReferenceTerm {
                power,
                published,
                computed: value(power),
                misprinted: is_misprinted(q, power),
            })
            .collect();
        let max_abs_coeff_diff = reference
            .iter()
            .filter(|t| !t.misprinted)
            .map(|t| t.published.map_or(f64::INFINITY, |p| (p - t.computed).abs()))
            .fold(0.0, f64::max);
        let last = pubd.terms.last().map_or(i32::MIN, |t| t.0);
        let remainder_consistent = match pubd.remainder {
            Some(r) => (last + 1..r).all(|k| computed.coeff(k).is_some_and(|c| c.to_f64().abs() < 1e-12)),
            None => true,
        };
        Self {
            quantity: q,
            computed: computed.view(),
            reference,
            max_abs_coeff_diff,
            remainder_consistent,
        }
    }
}

/// Every expansion for the given jets, in double precision.
#[derive(Clone, Debug)]
pub struct Expansions {
    pub funk: FunkSeries<f64>,
    pub rund: RundSeries<f64>,
}

impl Expansions {
    pub fn new(jets: &GraphJets<f64>, support_height: f64, order: i32) -> Result<Self> {
        let funk = funk_series(jets, support_height, order)?;
        let rund = rund_series(jets, &funk.accel, order)?;
        Ok(Self { funk, rund })
    }

    pub fn get(&self, q: Quantity) -> &HalfPowerSeries<f64> {
        series_of(&self.funk, &self.rund, q)
    }
}

/// Every expansion with rational inputs in exact arithmetic; the Rund
/// branch is computed over Q(√2).
#[derive(Clone, Debug)]
pub struct ExactExpansions {
    pub funk: FunkSeries<BigRational>,
    pub rund: RundSeries<Surd>,
}

impl ExactExpansions {
    pub fn new(jets: &GraphJets<BigRational>, support_height: BigRational, order: i32) -> Result<Self> {
        let funk = funk_series(jets, support_height, order)?;
        let lift = |c: &BigRational| Surd::rational(c.clone());
        let accel = [funk.accel[0].map(lift), funk.accel[1].map(lift)];
        let rund = rund_series(&jets.map(lift), &accel, order)?;
        Ok(Self { funk, rund })
    }

    /// Expansions for the normalized jets `(1/2, f3, f4)` and support height
    /// `h`, each taken as the exact rational value of the double.
    pub fn from_floats(f3: f64, f4: f64, h: f64, order: i32) -> Result<Self> {
        let q = |x: f64, what: &str| {
            BigRational::from_float(x).ok_or_else(|| FunkError::InvalidShape(format!("{what} must be finite")))
        };
        Self::new(&GraphJets::normalized(q(f3, "f3")?, q(f4, "f4")?), q(h, "H")?, order)
    }

    /// The series of `q` as doubles.
    pub fn get(&self, q: Quantity) -> HalfPowerSeries<f64> {
        match q {
            Quantity::T1 | Quantity::T2 | Quantity::Kr => series_of_rund(&self.rund, q).to_f64(),
            _ => series_of_funk(&self.funk, q).to_f64(),
        }
    }

    pub fn exact_view(&self, q: Quantity) -> SeriesView {
        match q {
            Quantity::T1 | Quantity::T2 | Quantity::Kr => series_of_rund(&self.rund, q).view(),
            _ => series_of_funk(&self.funk, q).view(),
        }
    }
}

fn series_of_funk<C: Coeff>(f: &FunkSeries<C>, q: Quantity) -> &HalfPowerSeries<C> {
    match q {
        Quantity::TPlus => &f.t_plus,
        Quantity::TMinus => &f.t_minus,
        Quantity::ThetaTangent => &f.theta_tangent,
        Quantity::TX2 => &f.t_x2,
        Quantity::TX2X2 => &f.t_x2x2,
        Quantity::ThetaX1 => &f.theta_x1,
        Quantity::ThetaX2 => &f.theta_x2,
        Quantity::G11 => &f.g11,
        Quantity::G12 => &f.g12,
        Quantity::G22 => &f.g22,
        Quantity::Accel1 => &f.accel[0],
        Quantity::Accel2 => &f.accel[1],
        Quantity::KnInner => &f.kn_inner,
        Quantity::KnOuter => &f.kn_outer,
        Quantity::Kf2 => &f.kf2,
        Quantity::Kf => &f.kf,
        Quantity::T1 | Quantity::T2 | Quantity::Kr => unreachable!("Rund quantity"),
    }
}

fn series_of_rund<C: Coeff>(r: &RundSeries<C>, q: Quantity) -> &HalfPowerSeries<C> {
    match q {
        Quantity::T1 => &r.t1,
        Quantity::T2 => &r.t2,
        Quantity::Kr => &r.kr,
        _ => unreachable!("not a Rund quantity"),
    }
}

fn series_of<'a, C: Coeff>(f: &'a FunkSeries<C>, r: &'a RundSeries<C>, q: Quantity) -> &'a HalfPowerSeries<C> {
    match q {
        Quantity::T1 | Quantity::T2 | Quantity::Kr => series_of_rund(r, q),
        _ => series_of_funk(f, q),
    }
}

/// Reports for every quantity.
pub fn reports(exp: &Expansions, f3: f64, f4: f64, h: f64) -> Vec<ExpansionReport> {
    Quantity::ALL
        .into_iter()
        .map(|q| ExpansionReport::new(q, exp.get(q), f3, f4, h))
        .collect()
}

pub fn exact_reports(exp: &ExactExpansions, f3: f64, f4: f64, h: f64) -> Vec<ExpansionReport> {
    Quantity::ALL
        .into_iter()
        .map(|q| {
            let mut r = ExpansionReport::new(q, &exp.get(q), f3, f4, h);
            r.computed = exp.exact_view(q);
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    /// f‴ = f3, f⁗ = −1/5, f⁽⁵⁾ = 3/7, support height 13/10.
    fn exact(f3: Q) -> ExactExpansions {
        let jets = GraphJets::normalized(f3, q(-1, 5)).with_higher([q(3, 7)]);
        ExactExpansions::new(&jets, q(13, 10), DEFAULT_ORDER).unwrap()
    }

    fn coeffs(s: &HalfPowerSeries<Q>, from: i32, n: i32) -> Vec<Q> {
        (from..from + n).map(|k| s.coeff(k).unwrap()).collect()
    }

    fn qs(v: &[(i64, i64)]) -> Vec<Q> {
        v.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn pure_parabola_inverts_exactly() {
        let jets = GraphJets::normalized(q(0, 1), q(0, 1)).with_higher([]);
        let t = solve_ray_series(&jets, Direction::Plus, 10).unwrap();
        assert_eq!(t.terms().collect::<Vec<_>>(), vec![(1, &q(2, 1))]);
        assert_eq!(t.trunc(), 11);
    }

    #[test]
    fn ray_and_metric_series_match_symbolic_values() {
        // f3 = c symbolic results evaluated at c = 1/2, f4 = −1/5
        let e = exact(q(1, 2));
        let f = &e.funk;
        // t = 2s − 4c/3 s² + (20c²/9 − 2f4/3) s³
        assert_eq!(coeffs(&f.t_plus, 1, 3), qs(&[(2, 1), (-2, 3), (31, 45)]));
        assert_eq!(coeffs(&f.t_minus, 1, 2), qs(&[(-2, 1), (-2, 3)]));
        // Θ = 1/(2s) + c/3 + (−c²/3 + f4/6) s
        assert_eq!(coeffs(&f.theta_tangent, -1, 3), qs(&[(1, 2), (1, 6), (-7, 60)]));
        // t_x2 = 1/s − 4c/3 + (10c²/3 − f4) s
        assert_eq!(coeffs(&f.t_x2, -1, 3), qs(&[(1, 1), (-2, 3), (31, 30)]));
        // t_x2x2 = −1/(2s³) + 0/s² + (5c²/3 − f4/2)/s
        assert_eq!(coeffs(&f.t_x2x2, -3, 3), qs(&[(-1, 2), (0, 1), (31, 60)]));
        // Θ_x1 = g11 = 1/(4s²) + c/(3s)
        assert_eq!(coeffs(&f.g11, -2, 2), qs(&[(1, 4), (1, 6)]));
        assert_eq!(f.theta_x1, f.g11);
        // g12 = Θ_x2 = −1/(4s³) + 0 + (−c²/6 + f4/12)/s
        assert_eq!(coeffs(&f.g12, -3, 3), qs(&[(-1, 4), (0, 1), (-7, 120)]));
        // g22 = 1/(2s⁴) − c/(6s³) + 0/s² + (35c³/27 − 5c f4/6 + f5/10)/s
        let c = q(1, 2);
        let f4 = q(-1, 5);
        let f5 = q(3, 7);
        let g22_m1 = q(35, 27) * c.clone() * c.clone() * c.clone() - q(5, 6) * c.clone() * f4 + f5 / q(10, 1);
        assert_eq!(coeffs(&f.g22, -4, 4), vec![q(1, 2), q(-1, 12), q(0, 1), g22_m1]);
        assert!(f.ray_residual == 0.0);
    }

    #[test]
    fn curvature_series_match_symbolic_tables() {
        type Row = [(i64, i64); 4];
        let cases: [(Q, Row, Row, Row); 4] = [
            (q(0, 1), [(1, 1), (0, 1), (2, 1), (2, 7)], [(-2, 1), (0, 1), (-34, 15), (8, 35)], [(20, 13), (0, 1), (1484, 507), (-16, 91)]),
            (q(1, 2), [(1, 1), (-1, 1), (7, 3), (467, 630)], [(-2, 1), (4, 3), (-18, 5), (1178, 315)], [(20, 13), (-40, 39), (668, 169), (-39028, 10647)]),
            (q(1, 1), [(1, 1), (-2, 1), (10, 3), (3632, 315)], [(-2, 1), (8, 3), (-38, 5), (5224, 315)], [(20, 13), (-80, 39), (1188, 169), (-152624, 10647)]),
            (q(-3, 4), [(1, 1), (3, 2), (11, 4), (-2031, 560)], [(-2, 1), (-2, 1), (-79, 15), (-3341, 420)], [(20, 13), (20, 13), (2654, 507), (51833, 7098)]),
        ];
        for (f3, kf2, kn_out, kn_in) in cases {
            let e = exact(f3.clone());
            assert_eq!(coeffs(&e.funk.kf2, 0, 4), qs(&kf2), "kF² at f3 = {f3}");
            assert_eq!(coeffs(&e.funk.kn_outer, 0, 4), qs(&kn_out), "kn outer at f3 = {f3}");
            assert_eq!(coeffs(&e.funk.kn_inner, 2, 4), qs(&kn_in), "kn inner at f3 = {f3}");
        }
    }

    #[test]
    fn rund_series_match_symbolic_values() {
        let kr1 = [0.0, -0.178_511_301_977_579_2, -0.357_022_603_955_158_4, 0.267_766_952_966_368_81];
        for (f3, k1) in [q(0, 1), q(1, 2), q(1, 1), q(-3, 4)].into_iter().zip(kr1) {
            let e = exact(f3.clone());
            let kr = e.get(Quantity::Kr);
            assert!((kr.coeff(0).unwrap() - (SQRT_2 - 1.0)).abs() < 1e-16);
            assert!((kr.coeff(1).unwrap() - k1).abs() < 1e-16, "{f3}");
            // k_R = √2−1 − f3(5√2−6)/3 s + ((63√2−112)f3² + (24−12√2)f4 + 18(√2−1))/18 s²
            let c = f3.to_f64();
            let f4 = -0.2;
            let k2 = ((63.0 * SQRT_2 - 112.0) * c * c + (24.0 - 12.0 * SQRT_2) * f4 + 18.0 * (SQRT_2 - 1.0)) / 18.0;
            assert!((kr.coeff(2).unwrap() - k2).abs() < 1e-14);
            let t1 = e.get(Quantity::T1);
            assert!((t1.coeff(0).unwrap() - (1.0 + SQRT_2)).abs() < 1e-15);
            assert!((t1.coeff(1).unwrap() - c * (2.0 + 3.0 * SQRT_2) / 3.0).abs() < 1e-15);
            assert!((e.get(Quantity::T2).coeff(0).unwrap() - (SQRT_2 - 1.0)).abs() < 1e-15);
            assert_eq!(e.rund.residual, 0.0);
        }
    }

    #[test]
    fn double_and_exact_modes_agree() {
        for f3 in [0.0, 0.5, 1.0, -0.75, 0.3141] {
            let jets = GraphJets::normalized(f3, -0.2).with_higher([3.0 / 7.0, 0.1, -0.05]);
            let d = Expansions::new(&jets, 1.3, DEFAULT_ORDER).unwrap();
            let x = ExactExpansions::new(&jets.map(|c| <Q as Coeff>::from_f64(*c)), <Q as Coeff>::from_f64(1.3), DEFAULT_ORDER).unwrap();
            for qn in Quantity::ALL {
                let a = d.get(qn);
                let b = x.get(qn);
                assert_eq!((a.lo(), a.trunc()), (b.lo(), b.trunc()), "{qn:?}");
                let scale = (a.lo()..=a.trunc()).map(|k| b.coeff(k).unwrap().abs()).fold(1.0, f64::max);
                assert!(a.max_abs_diff(&b) < 1e-11 * scale, "{qn:?} {}", a.max_abs_diff(&b));
            }
            assert!(d.funk.ray_residual < 1e-12, "{}", d.funk.ray_residual);
            assert!(d.rund.residual < 1e-12, "{}", d.rund.residual);
        }
    }

    #[test]
    fn truncation_is_eight_half_powers_beyond_leading() {
        let e = exact(q(1, 3));
        for qn in Quantity::ALL {
            let s = e.get(qn);
            assert_eq!(s.trunc() - s.lo(), DEFAULT_ORDER, "{qn:?}");
        }
    }

    #[test]
    fn flat_third_derivative_kills_first_corrections() {
        let e = exact(q(0, 1));
        for qn in [Quantity::Kf2, Quantity::KnOuter, Quantity::Kr] {
            assert_eq!(e.get(qn).coeff(1), Some(0.0), "{qn:?}");
        }
    }

    #[test]
    fn unmisprinted_published_terms_agree() {
        for f3 in [q(0, 1), q(1, 2), q(1, 1), q(-3, 4)] {
            let e = exact(f3.clone());
            for r in exact_reports(&e, f3.to_f64(), -0.2, 1.3) {
                assert!(r.max_abs_coeff_diff < 1e-9, "{:?} {}", r.quantity, r.max_abs_coeff_diff);
            }
        }
        // the misprints are real: at f3 = 1 each differs from the derivation
        let e = exact(q(1, 1));
        for r in exact_reports(&e, 1.0, -0.2, 1.3) {
            for t in r.reference.iter().filter(|t| t.misprinted) {
                assert!(t.published.is_none_or(|p| (p - t.computed).abs() > 1e-3), "{:?} {}", r.quantity, t.power);
            }
        }
    }

    #[test]
    fn stated_remainders() {
        let e = exact(q(1, 2));
        let rep = exact_reports(&e, 0.5, -0.2, 1.3);
        let get = |qn: Quantity| rep.iter().find(|r| r.quantity == qn).unwrap().remainder_consistent;
        // the s³ term of t and the 1/s term of g22 are nonzero
        assert!(!get(Quantity::TPlus));
        assert!(!get(Quantity::G22));
        assert!(get(Quantity::ThetaX1));
        assert!(get(Quantity::KnInner));
    }

    #[test]
    fn truncated_jets_limit_the_known_orders() {
        // f″ … f^(6): t is determined through s^5
        let derivs = vec![0.5, 0.3, -0.2, 0.4, 0.1];
        let t = solve_ray_series(&GraphJets::truncated(derivs.clone()), Direction::Plus, 20).unwrap();
        assert_eq!(t.trunc(), 5);
        let full = solve_ray_series(&GraphJets::new(derivs.clone()), Direction::Plus, 20).unwrap();
        assert!(full.truncate(5).max_abs_diff(&t) < 1e-15);
        assert!(matches!(
            funk_series(&GraphJets::truncated(derivs), 1.5, DEFAULT_ORDER),
            Err(FunkError::SingularBranch(_))
        ));
        // eleven derivatives are enough for the default order
        let many: Vec<f64> = (0..11).map(|k| if k == 0 { 0.5 } else { 0.1 * k as f64 }).collect();
        assert!(Expansions::new(&GraphJets::truncated(many), 1.5, DEFAULT_ORDER).is_ok());
    }

    #[test]
    fn quantity_names_round_trip() {
        for qn in Quantity::ALL {
            assert_eq!(Quantity::parse(qn.name()), Some(qn));
        }
        assert_eq!(Quantity::parse("kR"), Some(Quantity::Kr));
        assert_eq!(Quantity::parse("kn-inner"), Some(Quantity::KnInner));
        assert_eq!(Quantity::parse("nope"), None);
    }
}
