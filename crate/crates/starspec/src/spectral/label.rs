use std::fmt;

/// Identifies which geometry a spectrum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendId {
    Torus,
    Sphere,
    Su2,
}

impl fmt::Display for BackendId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendId::Torus => write!(f, "torus"),
            BackendId::Sphere => write!(f, "sphere"),
            BackendId::Su2 => write!(f, "su2"),
        }
    }
}

/// Index of a Laplace eigenfunction in one of the shipped bases.
///
/// Labels are totally ordered (derived lexicographic order) so that every
/// iteration over a spectrum is deterministic. Half-integer SU(2) spins are
/// stored doubled to keep them exact integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpectralLabel {
    /// Fourier mode n of the flat d-torus.
    Torus(Vec<i32>),
    /// Spherical harmonic (l, m), with -l <= m <= l.
    Sphere { l: u32, m: i32 },
    /// SU(2) matrix element (l, m, n), all doubled: two_l = 2l etc.
    Su2 { two_l: u32, two_m: i32, two_n: i32 },
}

impl SpectralLabel {
    pub fn backend(&self) -> BackendId {
        match self {
            SpectralLabel::Torus(_) => BackendId::Torus,
            SpectralLabel::Sphere { .. } => BackendId::Sphere,
            SpectralLabel::Su2 { .. } => BackendId::Su2,
        }
    }

    /// Compact text form used in cache files and reports.
    pub fn encode(&self) -> String {
        match self {
            SpectralLabel::Torus(n) => n
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            SpectralLabel::Sphere { l, m } => format!("{l},{m}"),
            SpectralLabel::Su2 {
                two_l,
                two_m,
                two_n,
            } => format!("{two_l},{two_m},{two_n}"),
        }
    }

    pub fn decode(backend: BackendId, s: &str) -> Option<SpectralLabel> {
        let parts: Vec<&str> = s.split(',').collect();
        match backend {
            BackendId::Torus => {
                let n: Option<Vec<i32>> = parts.iter().map(|p| p.parse().ok()).collect();
                n.map(SpectralLabel::Torus)
            }
            BackendId::Sphere => {
                if parts.len() != 2 {
                    return None;
                }
                Some(SpectralLabel::Sphere {
                    l: parts[0].parse().ok()?,
                    m: parts[1].parse().ok()?,
                })
            }
            BackendId::Su2 => {
                if parts.len() != 3 {
                    return None;
                }
                Some(SpectralLabel::Su2 {
                    two_l: parts[0].parse().ok()?,
                    two_m: parts[1].parse().ok()?,
                    two_n: parts[2].parse().ok()?,
                })
            }
        }
    }
}

impl fmt::Display for SpectralLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.encode())
    }
}
