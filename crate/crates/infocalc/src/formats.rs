//! JSON and CSV file formats.
//!
//! Complex numbers are `[re, im]` pairs. A state file carries either pure
//! amplitudes or a full density matrix:
//!
//! ```json
//! {"amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]], "dims": [2, 2]}
//! {"density": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]], "dims": [2]}
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use infocalc_core::linalg::{c64, ComplexMatrix};
use infocalc_core::protocols::{Edge, Endpoint, InfoDiagram, Species, Vertex, VertexKind};
use infocalc_core::sigma::SeriesRow;
use infocalc_core::states::DensityMatrix;
use infocalc_core::susyqm::SpectrumPairing;
use infocalc_core::C64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type Complex = [f64; 2];

pub fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

pub fn matrix_json(m: &ComplexMatrix) -> Vec<Vec<Complex>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| complex(m[(i, j)])).collect())
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<Vec<Complex>>>,
    pub dims: Vec<usize>,
}

impl StateFile {
    pub fn pure(amplitudes: &[C64], dims: Vec<usize>) -> Self {
        Self {
            amplitudes: Some(amplitudes.iter().map(|z| complex(*z)).collect()),
            density: None,
            dims,
        }
    }

    pub fn mixed(rho: &DensityMatrix) -> Self {
        Self {
            amplitudes: None,
            density: Some(matrix_json(rho.matrix())),
            dims: rho.dims().to_vec(),
        }
    }

    /// The amplitude vector, when the file holds a pure state.
    pub fn amplitude_vector(&self) -> Option<Vec<C64>> {
        self.amplitudes
            .as_ref()
            .map(|a| a.iter().map(|[re, im]| c64(*re, *im)).collect())
    }

    pub fn to_density(&self) -> Result<DensityMatrix, CliError> {
        match (&self.amplitudes, &self.density) {
            (Some(_), None) => {
                let amps = self.amplitude_vector().unwrap_or_default();
                DensityMatrix::from_pure(&amps, self.dims.clone())
                    .map_err(|e| CliError::field("amplitudes", e))
            }
            (None, Some(rows)) => {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::Input {
                        field: "density".into(),
                        message: "matrix must be square".into(),
                    });
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|[re, im]| c64(*re, *im))
                    .collect();
                let m =
                    ComplexMatrix::new(n, n, data).map_err(|e| CliError::field("density", e))?;
                DensityMatrix::new(m, self.dims.clone()).map_err(|e| CliError::field("density", e))
            }
            _ => Err(CliError::Input {
                field: "amplitudes".into(),
                message: "state file needs exactly one of \"amplitudes\" or \"density\"".into(),
            }),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_state(path: &Path) -> Result<StateFile, CliError> {
    read_json(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub kind: String,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    pub species: String,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

impl DiagramFile {
    pub fn from_diagram(d: &InfoDiagram) -> Self {
        Self {
            vertices: d
                .vertices()
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    kind: v.kind.as_str().into(),
                })
                .collect(),
            edges: d
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    from: e.from.as_str().into(),
                    to: e.to.as_str().into(),
                    species: e.species.as_str().into(),
                    multiplicity: e.multiplicity,
                })
                .collect(),
        }
    }

    pub fn to_diagram(&self) -> Result<InfoDiagram, CliError> {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let kind: VertexKind = v
                    .kind
                    .parse()
                    .map_err(|e| CliError::field(format!("vertices[{i}].kind"), e))?;
                Ok(Vertex {
                    id: v.id.clone(),
                    kind,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let species: Species = e
                    .species
                    .parse()
                    .map_err(|err| CliError::field(format!("edges[{i}].species"), err))?;
                Ok(Edge {
                    from: Endpoint::parse(&e.from),
                    to: Endpoint::parse(&e.to),
                    species,
                    multiplicity: e.multiplicity,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        InfoDiagram::new(vertices, edges).map_err(|e| CliError::field("edges", e))
    }
}

pub fn read_diagram(path: &Path) -> Result<InfoDiagram, CliError> {
    read_json::<DiagramFile>(path)?.to_diagram()
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing CSV to memory");
    let bytes = w.into_inner().expect("flushing CSV to memory");
    String::from_utf8(bytes).expect("CSV is UTF-8")
}

#[derive(Serialize)]
struct PairingRow {
    level: usize,
    e0: f64,
    e1: f64,
    gap: f64,
}

#[derive(Serialize)]
struct SeriesCsvRow {
    step: usize,
    time: f64,
    energy: f64,
    momentum: f64,
    constraint_residual: f64,
    tangency_residual: f64,
}

/// `level,e0,e1,gap`, one row per matched pair.
pub fn pairing_csv(p: &SpectrumPairing) -> String {
    csv_string(|w| {
        for (level, &(e0, e1)) in p.pairs.iter().enumerate() {
            w.serialize(PairingRow {
                level,
                e0,
                e1,
                gap: (e0 - e1).abs(),
            })?;
        }
        if p.pairs.is_empty() {
            w.write_record(["level", "e0", "e1", "gap"])?;
        }
        Ok(())
    })
}

/// `step,time,energy,momentum,constraint_residual,tangency_residual`.
pub fn series_csv(rows: &[SeriesRow]) -> String {
    csv_string(|w| {
        for r in rows {
            w.serialize(SeriesCsvRow {
                step: r.step,
                time: r.time,
                energy: r.energy,
                momentum: r.momentum,
                constraint_residual: r.constraint_residual,
                tangency_residual: r.tangency_residual,
            })?;
        }
        Ok(())
    })
}

/// Write a document to `path`, creating or truncating it.
pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut f = fs::File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    f.write_all(contents.as_bytes())
        .map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
}
