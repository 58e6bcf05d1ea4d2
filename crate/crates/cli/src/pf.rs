use std::path::Path;

use cctl_core::pf_matrix::parse::parse_matrix_file;
use cctl_core::pf_matrix::{
    compute_k, is_irreducible, min_positive_diagonal_power, primitivity_exponent, random,
    wielandt_bound, Primitivity, SpreadCertificate,
};
use cctl_core::{BlockTransition, IntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Check, CliError, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfReport {
    pub rows: usize,
    pub cols: usize,
    pub irreducible: Option<bool>,
    /// Shortest cycle length in the support graph.
    pub q: Option<u64>,
    pub primitivity: Option<Primitivity>,
    pub spread: Option<SpreadCertificate>,
    pub checks: Vec<Check>,
}

impl PfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn render(&self) -> String {
        let mut out = format!("matrix {}x{}\n", self.rows, self.cols);
        if let Some(q) = self.q {
            out.push_str(&format!("q = {q}\n"));
        }
        match self.primitivity {
            Some(Primitivity::Primitive(e)) => out.push_str(&format!("primitivity exponent = {e}\n")),
            Some(Primitivity::NotPrimitive) => out.push_str("not primitive\n"),
            None => {}
        }
        if let Some(s) = &self.spread {
            out.push_str(&format!(
                "r = {}, p = 2rq = {}, cover time i = {}, k = p + i = {}, bound c_n χ² = {}\n",
                s.real_count, s.p, s.cover_time, s.k, s.bound
            ));
        }
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        out
    }
}

fn analyse(m: &IntMatrix, checks: &mut Vec<Check>) -> (Option<bool>, Option<u64>, Option<Primitivity>) {
    let irreducible = match is_irreducible(m) {
        Ok(b) => b,
        Err(e) => {
            checks.push(Check::new("square", false, e.to_string()));
            return (None, None, None);
        }
    };
    checks.push(Check::new(
        "irreducible",
        irreducible,
        if irreducible { "support graph strongly connected" } else { "support graph not strongly connected" },
    ));
    if !irreducible {
        return (Some(false), None, None);
    }
    let q = min_positive_diagonal_power(m).expect("irreducible");
    let prim = primitivity_exponent(m).expect("irreducible");
    let detail = match prim {
        Primitivity::Primitive(e) => format!("exponent {e} <= {}", wielandt_bound(m.rows())),
        Primitivity::NotPrimitive => format!("no positive power up to {}", wielandt_bound(m.rows())),
    };
    checks.push(Check::new("primitive", prim.exponent().is_some(), detail));
    (Some(true), Some(q), Some(prim))
}

pub fn run_pf(text: &str, path: &Path) -> Result<PfReport, CliError> {
    let file = parse_matrix_file(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let m = &file.matrix;
    let mut checks = Vec::new();
    let (irreducible, q, primitivity) = analyse(m, &mut checks);
    let mut spread = None;
    match (file.real, file.surface) {
        (Some(real), Some(surface)) => {
            let result = BlockTransition::new(m.clone(), real, surface).and_then(|bt| compute_k(&bt));
            match result {
                Ok(cert) => {
                    checks.push(Check::new(
                        "spread_bound",
                        cert.within_bound,
                        format!("k = {} against c_n χ² = {}", cert.k, cert.bound),
                    ));
                    spread = Some(cert);
                }
                Err(e) => checks.push(Check::new("block_transition", false, e.to_string())),
            }
        }
        (None, None) => {}
        _ => {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                message: "`real:` and `surface:` lines must appear together".into(),
            })
        }
    }
    Ok(PfReport {
        rows: m.rows(),
        cols: m.cols(),
        irreducible,
        q,
        primitivity,
        spread,
        checks,
    })
}

/// Result of the seeded random sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomReport {
    pub seed: u64,
    pub samples: usize,
    pub primitive: usize,
    pub imprimitive: usize,
    pub checks: Vec<Check>,
}

/// Either a single-file report or a random sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PfOutput {
    File(PfReport),
    Random(RandomReport),
}

impl PfOutput {
    pub fn passed(&self) -> bool {
        match self {
            PfOutput::File(r) => r.passed(),
            PfOutput::Random(r) => r.checks.iter().all(|c| c.status == Status::Pass),
        }
    }

    pub fn render(&self) -> String {
        match self {
            PfOutput::File(r) => r.render(),
            PfOutput::Random(r) => {
                let mut out = format!(
                    "seed {}: {} irreducible matrices, {} primitive, {} imprimitive\n",
                    r.seed, r.samples, r.primitive, r.imprimitive
                );
                for c in &r.checks {
                    out.push_str(&c.line());
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Checks `q <= n`, `(M^q)^{2n} > 0` and the Wielandt bound on `samples`
/// random irreducible matrices of dimension at most 8.
pub fn run_random(samples: usize, seed: u64) -> PfOutput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut primitive, mut imprimitive) = (0, 0);
    let mut bad_q = Vec::new();
    let mut bad_spread = Vec::new();
    let mut bad_wielandt = Vec::new();
    for i in 0..samples {
        let n = rng.random_range(1..=8usize);
        let m = random::irreducible(&mut rng, n, 3);
        let q = match min_positive_diagonal_power(&m) {
            Ok(q) => q,
            Err(_) => {
                bad_q.push(i);
                continue;
            }
        };
        if q as usize > n {
            bad_q.push(i);
        }
        match primitivity_exponent(&m) {
            Ok(Primitivity::Primitive(e)) => {
                primitive += 1;
                if e > wielandt_bound(n) {
                    bad_wielandt.push(i);
                }
                let spread = m.pow(q).and_then(|p| p.pow(2 * n as u64));
                if !spread.map(|p| p.is_positive()).unwrap_or(false) {
                    bad_spread.push(i);
                }
            }
            _ => imprimitive += 1,
        }
    }
    let detail = |bad: &Vec<usize>| {
        if bad.is_empty() {
            "holds on all".to_string()
        } else {
            format!("fails on samples {bad:?}")
        }
    };
    PfOutput::Random(RandomReport {
        seed,
        samples,
        primitive,
        imprimitive,
        checks: vec![
            Check::new("q_le_dim", bad_q.is_empty(), detail(&bad_q)),
            Check::new(
                "spread_power_positive",
                bad_spread.is_empty(),
                format!("{} of {primitive} primitive", detail(&bad_spread)),
            ),
            Check::new("wielandt", bad_wielandt.is_empty(), detail(&bad_wielandt)),
        ],
    })
}
