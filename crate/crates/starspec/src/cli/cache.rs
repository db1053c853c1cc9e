//! Fusion-tensor cache files. Plain text, versioned by the magic line
//! `SPECFUS1`, with an FNV-1a checksum over the pair lines; rebuilding with
//! the same inputs reproduces the file byte for byte.
//!
//! Layout:
//!
//! ```text
//! SPECFUS1
//! backend=torus
//! truncation=d=2,nmax=6,radii=[1.0, 1.0]
//! drop_tol=<float>
//! pairs=<count>
//! checksum=<16 hex digits>
//! <alpha>;<beta>;<leak 0|1>[;<gamma>;<re>;<im>]...
//! ...
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;

use crate::bases::AnyBasis;
use crate::error::{Error, Result};
use crate::spectral::{FusionTensor, PairEntry, SpectralLabel};

use super::report::fmt_f64;

pub const CACHE_MAGIC: &str = "SPECFUS1";

fn fnv1a64(data: &str) -> u64 {
    let mut h: u64 = 0xCBF29CE484222325;
    for b in data.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001B3);
    }
    h
}

fn pair_lines(tensor: &FusionTensor) -> String {
    let sp = tensor.spectrum();
    let mut body = String::new();
    for ((a, b), entry) in tensor.iter_pairs() {
        let _ = write!(
            body,
            "{};{};{}",
            sp.label(a).encode(),
            sp.label(b).encode(),
            u8::from(entry.leaks)
        );
        for &(g, c) in &entry.channels {
            let _ = write!(
                body,
                ";{};{};{}",
                sp.label(g).encode(),
                fmt_f64(c.re),
                fmt_f64(c.im)
            );
        }
        body.push('\n');
    }
    body
}

pub fn encode(tensor: &FusionTensor) -> String {
    let body = pair_lines(tensor);
    let mut out = String::new();
    let _ = writeln!(out, "{CACHE_MAGIC}");
    let _ = writeln!(out, "backend={}", tensor.spectrum().backend());
    let _ = writeln!(out, "truncation={}", tensor.spectrum().truncation());
    let _ = writeln!(out, "drop_tol={}", fmt_f64(tensor.drop_tol()));
    let _ = writeln!(out, "pairs={}", tensor.pairs_total());
    let _ = writeln!(out, "checksum={:016x}", fnv1a64(&body));
    out.push_str(&body);
    out
}

/// Checksum as written in the header; convenient for determinism checks.
pub fn checksum_of(tensor: &FusionTensor) -> String {
    format!("{:016x}", fnv1a64(&pair_lines(tensor)))
}

/// Writes the cache with a lock file guarding against concurrent writers.
pub fn write_cache(tensor: &FusionTensor, path: &Path) -> Result<()> {
    let lock = lock_path(path);
    match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
        Ok(_) => {}
        Err(e) => {
            return Err(Error::Cache(format!(
                "cannot take write lock {}: {e}",
                lock.display()
            )))
        }
    }
    let result = (|| -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, encode(tensor))?;
        fs::rename(&tmp, path)?;
        Ok(())
    })();
    let _ = fs::remove_file(&lock);
    result
}

fn lock_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".lock");
    PathBuf::from(os)
}

/// Loads a cache and validates magic, checksum, and that the backend and
/// truncation match the basis the caller is about to use it with.
pub fn load_cache(path: &Path, basis: &AnyBasis) -> Result<FusionTensor> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_MAGIC) {
        return Err(Error::Cache(format!(
            "{} is not a {CACHE_MAGIC} cache",
            path.display()
        )));
    }
    let mut header = BTreeMap::new();
    for _ in 0..5 {
        let line = lines
            .next()
            .ok_or_else(|| Error::Cache("truncated header".into()))?;
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Cache(format!("malformed header line: {line}")))?;
        header.insert(k.to_string(), v.to_string());
    }
    let sp = basis.spectrum();
    let want_backend = sp.backend().to_string();
    if header.get("backend") != Some(&want_backend) {
        return Err(Error::Cache(format!(
            "backend mismatch: cache has {:?}, expected {want_backend}",
            header.get("backend")
        )));
    }
    if header.get("truncation").map(String::as_str) != Some(sp.truncation()) {
        return Err(Error::Cache(format!(
            "truncation mismatch: cache has {:?}, expected {}",
            header.get("truncation"),
            sp.truncation()
        )));
    }
    let drop_tol: f64 = header
        .get("drop_tol")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Cache("bad drop_tol".into()))?;
    let declared_pairs: usize = header
        .get("pairs")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Cache("bad pairs count".into()))?;
    let declared_checksum = header
        .get("checksum")
        .cloned()
        .ok_or_else(|| Error::Cache("missing checksum".into()))?;

    let body_start = text
        .match_indices('\n')
        .nth(5)
        .map(|(i, _)| i + 1)
        .ok_or_else(|| Error::Cache("truncated body".into()))?;
    let body = &text[body_start..];
    let actual = format!("{:016x}", fnv1a64(body));
    if actual != declared_checksum {
        return Err(Error::Cache(format!(
            "checksum mismatch: header {declared_checksum}, body {actual}"
        )));
    }

    let decode_label = |s: &str| -> Result<usize> {
        let label = SpectralLabel::decode(sp.backend(), s)
            .ok_or_else(|| Error::Cache(format!("bad label {s}")))?;
        sp.lookup(&label)
            .ok_or_else(|| Error::Cache(format!("label {s} outside truncation")))
    };
    let mut pairs = BTreeMap::new();
    for line in body.lines() {
        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() < 3 || (fields.len() - 3) % 3 != 0 {
            return Err(Error::Cache(format!("malformed pair line: {line}")));
        }
        let a = decode_label(fields[0])?;
        let b = decode_label(fields[1])?;
        let leaks = match fields[2] {
            "0" => false,
            "1" => true,
            other => return Err(Error::Cache(format!("bad leak flag {other}"))),
        };
        let mut channels = Vec::new();
        for chunk in fields[3..].chunks(3) {
            let g = decode_label(chunk[0])?;
            let re: f64 = chunk[1]
                .parse()
                .map_err(|_| Error::Cache(format!("bad float {}", chunk[1])))?;
            let im: f64 = chunk[2]
                .parse()
                .map_err(|_| Error::Cache(format!("bad float {}", chunk[2])))?;
            channels.push((g, Complex64::new(re, im)));
        }
        pairs.insert((a, b), PairEntry { channels, leaks });
    }
    if pairs.len() != declared_pairs {
        return Err(Error::Cache(format!(
            "pair count mismatch: header {declared_pairs}, body {}",
            pairs.len()
        )));
    }
    Ok(FusionTensor::from_pairs(Arc::clone(sp), drop_tol, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{SphereBasis, TorusBasis};

    #[test]
    fn encode_is_deterministic_and_loads_back() {
        let basis = AnyBasis::Sphere(SphereBasis::new(2));
        let tensor = basis.build_fusion(0.0);
        let text1 = encode(&tensor);
        let text2 = encode(&tensor);
        assert_eq!(text1, text2);
        let dir = std::env::temp_dir().join("starspec-cache-test");
        let _ = fs::create_dir_all(&dir);
        let path = dir.join("s2.fus");
        write_cache(&tensor, &path).unwrap();
        let loaded = load_cache(&path, &basis).unwrap();
        assert_eq!(loaded.pairs_total(), tensor.pairs_total());
        assert_eq!(loaded.entry_count(), tensor.entry_count());
        for (a, b, g, c) in tensor.iter_triples() {
            assert_eq!(loaded.coefficient(a, b, g), c);
        }
        // wrong basis is rejected
        let other = AnyBasis::Torus(TorusBasis::unit(1, 2).unwrap());
        assert!(load_cache(&path, &other).is_err());
        let smaller = AnyBasis::Sphere(SphereBasis::new(3));
        assert!(load_cache(&path, &smaller).is_err());
        // corruption is caught by the checksum
        let mut corrupt = fs::read_to_string(&path).unwrap();
        corrupt = corrupt.replacen("0;0;0", "0;0;1", 1);
        let bad_path = dir.join("bad.fus");
        fs::write(&bad_path, corrupt).unwrap();
        assert!(matches!(
            load_cache(&bad_path, &basis),
            Err(Error::Cache(_))
        ));
        let _ = fs::remove_file(&path);
        let _ = fs::remove_file(&bad_path);
    }
}
