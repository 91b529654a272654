//! Text syntax for states, bases and density-matrix files.
//!
//! States: `singlet`, `werner:f=0.5`, `alpha:a=0.7`, `slit:x=0.3`, `file:<path>`.
//! Bases: `zbasis`, `xbasis`, `ybasis`, `bloch:theta=1.57,phi=0`, `fourier:d=3`,
//! optionally suffixed with `@<subsystem>`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, DensityMatrix, Layout};
use crate::measures::Measurement;
use crate::observables::{fourier_basis, pauli_basis, qubit_basis, ProjectiveBasis, QubitBasisParam};
use crate::states::{self, AlphaParam, SlitParam, WernerParam};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// `key=value` pairs after the `name:` prefix.
fn key_values(body: &str) -> Result<Vec<(&str, f64)>> {
    body.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected key=value, found `{kv}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("`{v}` is not a number")))?;
            Ok((k.trim(), v))
        })
        .collect()
}

fn single_value(body: &str, key: &str) -> Result<f64> {
    match key_values(body)?.as_slice() {
        [(k, v)] if *k == key => Ok(*v),
        _ => Err(parse_err(format!("expected `{key}=<number>`, found `{body}`"))),
    }
}

pub fn parse_state(spec: &str) -> Result<DensityMatrix> {
    let spec = spec.trim();
    if spec == "singlet" {
        return Ok(states::singlet());
    }
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| parse_err(format!("unknown state `{spec}`")))?;
    match kind {
        "werner" => {
            let f = single_value(body, "f")?;
            Ok(states::werner(WernerParam::new(f).map_err(|e| parse_err(e.to_string()))?))
        }
        "alpha" => states::alpha_state(AlphaParam(single_value(body, "a")?)),
        "slit" => {
            let x = single_value(body, "x")?;
            Ok(states::floating_slit(SlitParam::new(x).map_err(|e| parse_err(e.to_string()))?))
        }
        "file" => read_density_file(Path::new(body)),
        _ => Err(parse_err(format!("unknown state family `{kind}`"))),
    }
}

pub fn parse_basis(spec: &str) -> Result<ProjectiveBasis> {
    let spec = spec.trim();
    match spec {
        "zbasis" => return Ok(pauli_basis('z').expect("z axis")),
        "xbasis" => return Ok(pauli_basis('x').expect("x axis")),
        "ybasis" => return Ok(pauli_basis('y').expect("y axis")),
        _ => {}
    }
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| parse_err(format!("unknown basis `{spec}`")))?;
    match kind {
        "bloch" => {
            let kv = key_values(body)?;
            let get = |name: &str| {
                kv.iter()
                    .find(|(k, _)| *k == name)
                    .map(|&(_, v)| v)
                    .ok_or_else(|| parse_err(format!("bloch basis needs `{name}`")))
            };
            if kv.len() != 2 {
                return Err(parse_err("bloch basis takes exactly theta and phi"));
            }
            let p = QubitBasisParam::new(get("theta")?, get("phi")?).map_err(|e| parse_err(e.to_string()))?;
            Ok(qubit_basis(p))
        }
        "fourier" => {
            let d = single_value(body, "d")?;
            if d.fract() != 0.0 || d < 2.0 {
                return Err(parse_err(format!("fourier dimension must be an integer >= 2, found {d}")));
            }
            Ok(fourier_basis(d as usize))
        }
        _ => Err(parse_err(format!("unknown basis family `{kind}`"))),
    }
}

/// `<basis>@<subsystem>`; without a suffix the subsystem is `default_subsystem`.
pub fn parse_measurement(spec: &str, default_subsystem: usize) -> Result<Measurement> {
    let (basis, subsystem) = match spec.rsplit_once('@') {
        Some((b, s)) => (
            b,
            s.parse::<usize>()
                .map_err(|_| parse_err(format!("`{s}` is not a subsystem index")))?,
        ),
        None => (spec, default_subsystem),
    };
    Ok(Measurement::new(parse_basis(basis)?, subsystem))
}

/// On-disk density matrix: `dims` plus row-major rows of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl DensityFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        DensityFile {
            dims: rho.layout().dims().to_vec(),
            matrix: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn into_state(self) -> Result<DensityMatrix> {
        let n = self.matrix.len();
        if let Some(row) = self.matrix.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        let mat = CMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.matrix[i][j];
            c(re, im)
        });
        DensityMatrix::new(mat, Layout::new(self.dims)?)
    }
}

pub fn parse_density_json(text: &str) -> Result<DensityMatrix> {
    let file: DensityFile = serde_json::from_str(text).map_err(|e| parse_err(format!("density file: {e}")))?;
    file.into_state()
}

pub fn read_density_file(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_density_json(&text)
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string_pretty(&DensityFile::from_state(rho)).expect("plain data serializes")
}
