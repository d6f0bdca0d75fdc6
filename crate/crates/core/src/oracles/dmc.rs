//! Finite-alphabet evaluation of the achievable-rate expressions, before
//! any Gaussian specialisation. All information terms are exact sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PMF_TOL: f64 = 1e-12;

/// `p(y, z | x1, x2)` stored row-major as `[x1][x2][y][z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DmcChannel {
    sizes: [usize; 4],
    transition: Vec<f64>,
}

/// `p(x1, x2)` stored row-major as `[x1][x2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    sizes: [usize; 2],
    probs: Vec<f64>,
}

fn check_entries(what: &str, xs: &[f64]) -> Result<()> {
    match xs.iter().position(|&p| !(p.is_finite() && p >= 0.0)) {
        Some(i) => Err(Error::InvalidPmf(format!("{what}: entry {i} is {}", xs[i]))),
        None => Ok(()),
    }
}

fn check_total(what: &str, xs: &[f64]) -> Result<()> {
    let total: f64 = xs.iter().sum();
    if (total - 1.0).abs() > PMF_TOL {
        return Err(Error::InvalidPmf(format!("{what} sums to {total}")));
    }
    Ok(())
}

impl DmcChannel {
    pub fn new(sizes: [usize; 4], transition: Vec<f64>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidPmf(format!("empty alphabet in {sizes:?}")));
        }
        let expected: usize = sizes.iter().product();
        if transition.len() != expected {
            return Err(Error::InvalidPmf(format!(
                "transition has {} entries, alphabet sizes {sizes:?} need {expected}",
                transition.len()
            )));
        }
        check_entries("transition", &transition)?;
        let row = sizes[2] * sizes[3];
        for (i, r) in transition.chunks(row).enumerate() {
            check_total(&format!("transition row {i}"), r)?;
        }
        Ok(DmcChannel { sizes, transition })
    }

    /// Builds `p(y,z|x) = p(y|x) p(z|x)` from separate output laws, each
    /// indexed `[x1][x2][out]`.
    pub fn from_marginals(
        n1: usize,
        n2: usize,
        py: &[f64],
        ny: usize,
        pz: &[f64],
        nz: usize,
    ) -> Result<Self> {
        if py.len() != n1 * n2 * ny || pz.len() != n1 * n2 * nz {
            return Err(Error::InvalidPmf("output law has the wrong length".into()));
        }
        let mut t = Vec::with_capacity(n1 * n2 * ny * nz);
        for x in 0..n1 * n2 {
            for &a in &py[x * ny..(x + 1) * ny] {
                t.extend(pz[x * nz..(x + 1) * nz].iter().map(|&b| a * b));
            }
        }
        DmcChannel::new([n1, n2, ny, nz], t)
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn transition(&self) -> &[f64] {
        &self.transition
    }
}

impl JointPmf {
    pub fn new(n1: usize, n2: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != n1 * n2 || probs.is_empty() {
            return Err(Error::InvalidPmf(format!(
                "input pmf has {} entries, expected {n1}x{n2}",
                probs.len()
            )));
        }
        check_entries("input pmf", &probs)?;
        check_total("input pmf", &probs)?;
        Ok(JointPmf {
            sizes: [n1, n2],
            probs,
        })
    }

    /// Product of two marginals.
    pub fn independent(p1: &[f64], p2: &[f64]) -> Result<Self> {
        let probs = p1.iter().flat_map(|&a| p2.iter().map(move |&b| a * b)).collect();
        JointPmf::new(p1.len(), p2.len(), probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Every information quantity the rate expressions use, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DmcInformation {
    pub sum_y: f64,
    pub sum_z: f64,
    pub x1_y_given_x2: f64,
    pub x2_y_given_x1: f64,
    pub x1_x2: f64,
    pub x1_z: f64,
    pub x2_z: f64,
}

/// Secrecy rates of the five schemes at a fixed input distribution,
/// each clamped at 0. Scenario-2 schemes take `R' = I(X1,X2;Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DmcRates {
    pub df: f64,
    pub pdfm: f64,
    pub df2: f64,
    pub pdfdfm: f64,
    pub pdfpdfm: f64,
    pub info: DmcInformation,
}

fn entropy(ps: &[f64]) -> f64 {
    -ps.iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

pub fn dmc_information(channel: &DmcChannel, input: &JointPmf) -> Result<DmcInformation> {
    let [n1, n2, ny, nz] = channel.sizes;
    if input.sizes != [n1, n2] {
        return Err(Error::InvalidPmf(format!(
            "input pmf is {:?} but channel inputs are {n1}x{n2}",
            input.sizes
        )));
    }
    let mut p_x1 = vec![0.0; n1];
    let mut p_x2 = vec![0.0; n2];
    let mut p_y = vec![0.0; ny];
    let mut p_z = vec![0.0; nz];
    let mut p_x1y = vec![0.0; n1 * ny];
    let mut p_x2y = vec![0.0; n2 * ny];
    let mut p_x1z = vec![0.0; n1 * nz];
    let mut p_x2z = vec![0.0; n2 * nz];
    // H(Y|X1,X2) and H(Z|X1,X2), accumulated row by row.
    let (mut h_y_x, mut h_z_x) = (0.0, 0.0);
    let mut row_y = vec![0.0; ny];
    let mut row_z = vec![0.0; nz];

    for x1 in 0..n1 {
        for x2 in 0..n2 {
            let px = input.probs[x1 * n2 + x2];
            p_x1[x1] += px;
            p_x2[x2] += px;
            if px == 0.0 {
                continue;
            }
            let base = (x1 * n2 + x2) * ny * nz;
            let row = &channel.transition[base..base + ny * nz];
            row_y.iter_mut().for_each(|v| *v = 0.0);
            row_z.iter_mut().for_each(|v| *v = 0.0);
            for (y, cells) in row.chunks(nz).enumerate() {
                for (z, &p) in cells.iter().enumerate() {
                    row_y[y] += p;
                    row_z[z] += p;
                }
            }
            for (y, &p) in row_y.iter().enumerate() {
                let q = px * p;
                p_y[y] += q;
                p_x1y[x1 * ny + y] += q;
                p_x2y[x2 * ny + y] += q;
            }
            h_y_x += px * entropy(&row_y);
            for (z, &p) in row_z.iter().enumerate() {
                let q = px * p;
                p_z[z] += q;
                p_x1z[x1 * nz + z] += q;
                p_x2z[x2 * nz + z] += q;
            }
            h_z_x += px * entropy(&row_z);
        }
    }

    let h_x = entropy(&input.probs);
    let (h_x1, h_x2) = (entropy(&p_x1), entropy(&p_x2));
    let (h_y, h_z) = (entropy(&p_y), entropy(&p_z));
    let (h_x1y, h_x2y) = (entropy(&p_x1y), entropy(&p_x2y));
    let (h_x1z, h_x2z) = (entropy(&p_x1z), entropy(&p_x2z));

    // Differences of conditional entropies, e.g. I(X1;Y|X2) =
    // H(Y|X2) - H(Y|X1,X2). Tiny negative values from cancellation are
    // floored at zero.
    let nn = |v: f64| v.max(0.0);
    Ok(DmcInformation {
        sum_y: nn(h_y - h_y_x),
        sum_z: nn(h_z - h_z_x),
        x1_y_given_x2: nn(h_x2y - h_x2 - h_y_x),
        x2_y_given_x1: nn(h_x1y - h_x1 - h_y_x),
        x1_x2: nn(h_x1 + h_x2 - h_x),
        x1_z: nn(h_x1 + h_z - h_x1z),
        x2_z: nn(h_x2 + h_z - h_x2z),
    })
}

pub fn dmc_rates(channel: &DmcChannel, input: &JointPmf, c1: f64, c2: f64) -> Result<DmcRates> {
    for (name, c) in [("c1", c1), ("c2", c2)] {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidParameter {
                name,
                value: c,
                reason: "link capacity must be finite and non-negative",
            });
        }
    }
    let i = dmc_information(channel, input)?;
    let r = i.sum_z;
    let secrecy = i.sum_y - i.sum_z;
    let relay1 = c1 + i.x2_y_given_x1;
    let relay2 = c2 + i.x1_y_given_x2;
    let joint = c1 + c2 - i.x1_x2;
    let min = |xs: &[f64]| xs.iter().copied().fold(f64::INFINITY, f64::min).max(0.0);
    let gate = c1 > i.x1_z && c2 > i.x2_z;
    Ok(DmcRates {
        df: min(&[c1, c2, secrecy]),
        pdfm: min(&[relay1, relay2, joint, secrecy]),
        df2: min(&[c1 - r, c2 - r, secrecy]),
        pdfdfm: min(&[relay1 - r, relay2 - r, joint - 2.0 * r, secrecy]),
        pdfpdfm: if gate {
            (min(&[relay1, relay2, joint, i.sum_y]) - i.sum_z).max(0.0)
        } else {
            0.0
        },
        info: i,
    })
}

/// On-disk form of a channel, an input law and the link capacities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmcDocument {
    pub alphabet_sizes: [usize; 4],
    pub transition: Vec<f64>,
    pub input_pmf: Vec<f64>,
    pub c1: f64,
    pub c2: f64,
}

impl DmcDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidPmf(format!("malformed document: {e}")))
    }

    pub fn channel(&self) -> Result<(DmcChannel, JointPmf)> {
        let [n1, n2, ..] = self.alphabet_sizes;
        Ok((
            DmcChannel::new(self.alphabet_sizes, self.transition.clone())?,
            JointPmf::new(n1, n2, self.input_pmf.clone())?,
        ))
    }

    pub fn rates(&self) -> Result<DmcRates> {
        let (ch, input) = self.channel()?;
        dmc_rates(&ch, &input, self.c1, self.c2)
    }
}

// ---------------------------------------------------------------------------
// Quantized Gaussian
// ---------------------------------------------------------------------------

/// Discretization of the Gaussian channel for cross-checking the closed
/// forms against [`dmc_rates`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantization {
    /// Input points per relay, spread uniformly over +-`span` std devs.
    pub input_points: usize,
    /// Bins per output over +-`span` std devs; the outer bins extend to
    /// infinity.
    pub output_bins: usize,
    pub span: f64,
}

impl Default for Quantization {
    fn default() -> Self {
        Quantization {
            input_points: 64,
            output_bins: 48,
            span: 5.0,
        }
    }
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `P(lo < x + N <= hi)` for unit noise, per output bin.
fn binned_output(mean: f64, edges: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(edges.len() + 1);
    let mut prev = 0.0;
    for &e in edges {
        let c = normal_cdf(e - mean);
        out.push(c - prev);
        prev = c;
    }
    out.push(1.0 - prev);
    out
}

/// Channel and input law approximating `(P1, P2, rho, g)`: inputs on a
/// uniform grid weighted by the bivariate normal density, outputs binned.
pub fn quantized_gaussian(
    p1: f64,
    p2: f64,
    rho: f64,
    g: f64,
    q: Quantization,
) -> Result<(DmcChannel, JointPmf)> {
    if !(p1 > 0.0 && p2 > 0.0 && (-1.0..1.0).contains(&rho) && (0.0..1.0).contains(&g)) {
        return Err(Error::InvalidParameter {
            name: "quantized_gaussian",
            value: rho,
            reason: "need P1, P2 > 0, -1 <= rho < 1, 0 <= g < 1",
        });
    }
    if q.input_points < 2 || q.output_bins < 2 || !(q.span > 0.0) {
        return Err(Error::InvalidParameter {
            name: "quantization",
            value: q.input_points as f64,
            reason: "need at least two points and bins and a positive span",
        });
    }
    let n = q.input_points;
    let grid = |sd: f64| -> Vec<f64> {
        (0..n)
            .map(|i| sd * q.span * (2.0 * i as f64 / (n - 1) as f64 - 1.0))
            .collect()
    };
    let (s1, s2) = (p1.sqrt(), p2.sqrt());
    let (xs1, xs2) = (grid(s1), grid(s2));

    let mut weights = Vec::with_capacity(n * n);
    let det = 1.0 - rho * rho;
    for &a in &xs1 {
        for &b in &xs2 {
            let (u, v) = (a / s1, b / s2);
            weights.push((-(u * u - 2.0 * rho * u * v + v * v) / (2.0 * det)).exp());
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    let sum_sd = (p1 + p2 + 2.0 * rho * s1 * s2).sqrt();
    let edges = |sd: f64| -> Vec<f64> {
        let m = q.output_bins;
        (1..m)
            .map(|i| sd * q.span * (2.0 * i as f64 / m as f64 - 1.0))
            .collect()
    };
    let ey = edges((1.0 + sum_sd * sum_sd).sqrt());
    let ez = edges((1.0 + g * sum_sd * sum_sd).sqrt());
    let sg = g.sqrt();
    let mut py = Vec::with_capacity(n * n * q.output_bins);
    let mut pz = Vec::with_capacity(n * n * q.output_bins);
    for &a in &xs1 {
        for &b in &xs2 {
            py.extend(binned_output(a + b, &ey));
            pz.extend(binned_output(sg * (a + b), &ez));
        }
    }
    let channel = DmcChannel::from_marginals(n, n, &py, q.output_bins, &pz, q.output_bins)?;
    Ok((channel, JointPmf::new(n, n, weights)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// X1, X2 uniform bits, Y = (X1, X2), Z constant.
    fn orthogonal() -> (DmcChannel, JointPmf) {
        let mut t = vec![0.0; 16];
        for x in 0..4 {
            t[x * 4 + x] = 1.0;
        }
        (
            DmcChannel::new([2, 2, 4, 1], t).unwrap(),
            JointPmf::independent(&[0.5, 0.5], &[0.5, 0.5]).unwrap(),
        )
    }

    #[test]
    fn noiseless_orthogonal_mac() {
        let (ch, input) = orthogonal();
        let r = dmc_rates(&ch, &input, 1.0, 1.0).unwrap();
        assert_eq!(r.df, 1.0);
        assert_eq!(r.pdfm, 2.0);
        assert_eq!(r.info.sum_y, 2.0);
        assert_eq!(r.info.sum_z, 0.0);
        let r = dmc_rates(&ch, &input, 0.3, 5.0).unwrap();
        assert_eq!(r.df, 0.3);
    }

    #[test]
    fn eavesdropper_sees_everything() {
        let mut t = vec![0.0; 64];
        for x in 0..4 {
            t[x * 16 + x * 4 + x] = 1.0;
        }
        let ch = DmcChannel::new([2, 2, 4, 4], t).unwrap();
        let input = JointPmf::new(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let r = dmc_rates(&ch, &input, 3.0, 3.0).unwrap();
        assert_eq!(
            (r.df, r.pdfm, r.df2, r.pdfdfm, r.pdfpdfm),
            (0.0, 0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn chain_rule_and_degradedness() {
        let (ch, input) = quantized_gaussian(
            2.0,
            1.0,
            0.3,
            0.4,
            Quantization {
                input_points: 12,
                output_bins: 16,
                span: 4.0,
            },
        )
        .unwrap();
        let i = dmc_information(&ch, &input).unwrap();
        // I(X1;Y) from the channel directly.
        let [n1, n2, ny, nz] = ch.sizes();
        let mut p_x1y = vec![0.0; n1 * ny];
        let mut p_y = vec![0.0; ny];
        let mut p_x1 = vec![0.0; n1];
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let px = input.probs()[x1 * n2 + x2];
                p_x1[x1] += px;
                for y in 0..ny {
                    let row: f64 = (0..nz)
                        .map(|z| ch.transition()[((x1 * n2 + x2) * ny + y) * nz + z])
                        .sum();
                    p_x1y[x1 * ny + y] += px * row;
                    p_y[y] += px * row;
                }
            }
        }
        let i_x1y = entropy(&p_x1) + entropy(&p_y) - entropy(&p_x1y);
        assert_abs_diff_eq!(i.sum_y, i_x1y + i.x2_y_given_x1, epsilon = 1e-10);
        assert!(i.sum_z <= i.sum_y);
    }

    #[test]
    fn validation() {
        assert!(DmcChannel::new([2, 2, 2, 1], vec![0.5; 8]).is_ok());
        assert!(matches!(
            DmcChannel::new([2, 2, 2, 1], vec![0.6; 8]),
            Err(Error::InvalidPmf(_))
        ));
        assert!(DmcChannel::new([2, 2, 2, 1], vec![0.5; 7]).is_err());
        assert!(DmcChannel::new([2, 2, 2, 1], vec![1.5, -0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]).is_err());
        assert!(JointPmf::new(2, 2, vec![0.25; 4]).is_ok());
        assert!(JointPmf::new(2, 2, vec![0.25 + 1e-9, 0.25, 0.25, 0.25]).is_err());
        let (ch, _) = orthogonal();
        let wrong = JointPmf::new(1, 4, vec![0.25; 4]).unwrap();
        assert!(dmc_rates(&ch, &wrong, 1.0, 1.0).is_err());
    }

    #[test]
    fn document_round_trip() {
        let (ch, input) = orthogonal();
        let doc = DmcDocument {
            alphabet_sizes: ch.sizes(),
            transition: ch.transition().to_vec(),
            input_pmf: input.probs().to_vec(),
            c1: 1.0,
            c2: 1.0,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back = DmcDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.rates().unwrap().pdfm, 2.0);
        assert!(DmcDocument::parse("{\"alphabet_sizes\": [1,1,1,1]}").is_err());
    }
}
