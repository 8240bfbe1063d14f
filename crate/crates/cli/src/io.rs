//! Reading inputs and writing outputs.

use std::fs;
use std::path::Path;

use geomplex::complex::CrossDissimilarity;
use geomplex::metric::{DissimilarityMatrix, MetricKind, PointCloud};
use geomplex::{Error, Result};

pub enum Space {
    Matrix(DissimilarityMatrix),
    Cross(CrossDissimilarity),
    Cloud(PointCloud),
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Writes to stdout; a closed pipe ends output quietly.
pub fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

pub fn parse_metric(text: &str) -> Result<MetricKind> {
    Ok(match text {
        "euclidean" | "l2" => MetricKind::Euclidean,
        "l1" => MetricKind::L1,
        "linf" => MetricKind::Linf,
        _ => match text.strip_prefix("circle:") {
            Some(c) => MetricKind::CircleGeodesic {
                circumference: c.parse().map_err(|_| Error::InvalidParameter(format!("bad circumference `{c}`")))?,
            },
            None => return Err(Error::UnknownName(format!("metric `{text}`"))),
        },
    })
}

/// Detects the format from the first non-comment line.
pub fn load_space(path: &Path, metric: MetricKind) -> Result<Space> {
    let text = read(path)?;
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    Ok(match head.split_whitespace().next() {
        Some("dist") => Space::Matrix(DissimilarityMatrix::parse(&text)?),
        Some("dowker") => Space::Cross(CrossDissimilarity::parse(&text)?),
        _ => Space::Cloud(PointCloud::parse_csv(&text, metric)?),
    })
}

pub fn load_matrix(path: &Path, metric: MetricKind) -> Result<DissimilarityMatrix> {
    match load_space(path, metric)? {
        Space::Matrix(m) => Ok(m),
        Space::Cloud(pc) => Ok(pc.to_matrix()),
        Space::Cross(_) => Err(Error::InvalidParameter(format!("{} holds a cross matrix, not a space", path.display()))),
    }
}

pub fn load_cloud(path: &Path, metric: MetricKind) -> Result<PointCloud> {
    match load_space(path, metric)? {
        Space::Cloud(pc) => Ok(pc),
        _ => Err(Error::InvalidParameter(format!("{} is not a point cloud", path.display()))),
    }
}

/// Two clouds in one ambient space: the combined matrix and the index
/// ranges of each part.
pub fn join_clouds(a: &PointCloud, b: &PointCloud) -> Result<(DissimilarityMatrix, Vec<usize>, Vec<usize>)> {
    let pts: Vec<Vec<f64>> = a.points().iter().chain(b.points()).cloned().collect();
    let amb = PointCloud::new(pts, a.metric())?.to_matrix();
    Ok((amb, (0..a.len()).collect(), (a.len()..a.len() + b.len()).collect()))
}

pub fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            emit(text);
            Ok(())
        }
    }
}
