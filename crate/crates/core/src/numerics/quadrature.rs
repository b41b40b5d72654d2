//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature with
//! rational maps for infinite end points.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0 && max_subdivisions >= 1) {
            return Err(Error::domain(format!(
                "quadrature tolerances must be positive and subdivisions >= 1, got ({abs_tol}, {rel_tol}, {max_subdivisions})"
            )));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    pub fn with_tolerance(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..Self::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub err_estimate: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// How a segment's local coordinate `t` maps onto the real line.
#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    /// x = origin + scale·t/(1−t), t ∈ [0, 1)
    Upper { origin: f64, scale: f64 },
    /// x = origin − scale·t/(1−t), t ∈ [0, 1)
    Lower { origin: f64, scale: f64 },
}

impl Map {
    #[inline]
    fn apply<F: Fn(f64) -> f64>(&self, f: &F, t: f64) -> f64 {
        match *self {
            Map::Identity => f(t),
            Map::Upper { origin, scale } => {
                let s = 1.0 - t;
                let v = f(origin + scale * t / s);
                if v == 0.0 {
                    0.0
                } else {
                    v * scale / (s * s)
                }
            }
            Map::Lower { origin, scale } => {
                let s = 1.0 - t;
                let v = f(origin - scale * t / s);
                if v == 0.0 {
                    0.0
                } else {
                    v * scale / (s * s)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    map: Map,
    value: f64,
    err: f64,
    splittable: bool,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        e = res_asc * (200.0 * e / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, map: Map) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = map.apply(f, center);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = map.apply(f, center - dx);
        let f2 = map.apply(f, center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() {
        return Err(Error::NonFinite(format!(
            "integrand on [{lo}, {hi}] (mapped {map:?})"
        )));
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * abs_half, res_asc * abs_half);
    // Further bisection is pointless once the nodes collapse onto each other.
    let splittable = abs_half > 100.0 * f64::EPSILON * center.abs().max(f64::MIN_POSITIVE);
    Ok(Segment {
        lo,
        hi,
        map,
        value: res_k * half,
        err,
        splittable,
    })
}

fn adapt<F: Fn(f64) -> f64>(f: &F, mut segments: Vec<Segment>, spec: &QuadratureSpec) -> Result<Integral> {
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let err: f64 = segments.iter().map(|s| s.err).sum();
        if err <= spec.target(value) {
            return Ok(Integral {
                value,
                err_estimate: err,
                subdivisions: segments.len(),
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .max_by(|a, b| a.1.err.total_cmp(&b.1.err))
            .map(|(i, _)| i);
        let Some(i) = worst.filter(|_| segments.len() < spec.max_subdivisions) else {
            return Err(Error::Quadrature {
                value,
                err_estimate: err,
            });
        };
        let s = segments.swap_remove(i);
        let mid = 0.5 * (s.lo + s.hi);
        segments.push(kronrod(f, s.lo, mid, s.map)?);
        segments.push(kronrod(f, mid, s.hi, s.map)?);
    }
}

/// Integrates `f` over `(a, b)`; either end may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    integrate_with_breaks(f, &[a, b], spec)
}

/// Integrates `f` over `(breaks[0], breaks[last])`, starting the adaptive
/// scheme from the given interior break points. The first and last break
/// may be infinite; the tail map then borrows its length scale from the
/// neighbouring finite piece.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral> {
    if breaks.len() < 2 {
        return Err(Error::domain("integration needs at least two end points"));
    }
    if breaks.iter().any(|b| b.is_nan()) || breaks.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain(format!(
            "integration break points must be strictly increasing, got {breaks:?}"
        )));
    }
    let k = breaks.len();
    let inner: Vec<f64> = breaks.iter().copied().filter(|b| b.is_finite()).collect();
    let scale = if inner.len() >= 2 {
        let w_lo = inner[1] - inner[0];
        let w_hi = inner[inner.len() - 1] - inner[inner.len() - 2];
        (w_lo, w_hi)
    } else {
        (1.0, 1.0)
    };
    let mut segments = Vec::with_capacity(k + 1);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        match (a.is_finite(), b.is_finite()) {
            (true, true) => segments.push(kronrod(&f, a, b, Map::Identity)?),
            (true, false) => segments.push(kronrod(
                &f,
                0.0,
                1.0,
                Map::Upper {
                    origin: a,
                    scale: scale.1.max(f64::MIN_POSITIVE),
                },
            )?),
            (false, true) => segments.push(kronrod(
                &f,
                0.0,
                1.0,
                Map::Lower {
                    origin: b,
                    scale: scale.0.max(f64::MIN_POSITIVE),
                },
            )?),
            (false, false) => {
                segments.push(kronrod(&f, 0.0, 1.0, Map::Lower { origin: 0.0, scale: 1.0 })?);
                segments.push(kronrod(&f, 0.0, 1.0, Map::Upper { origin: 0.0, scale: 1.0 })?);
            }
        }
    }
    adapt(&f, segments, spec)
}
