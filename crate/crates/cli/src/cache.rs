//! On-disk cache of monic irreducible polynomials keyed by `(q, d)`.

use std::fs;
use std::path::{Path, PathBuf};

use primcyc::algebra::{count_irreducibles, enum_irreducibles, Elem, Field, Poly};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Entry {
    q: u64,
    d: u32,
    polys: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct IrreducibleCache {
    dir: Option<PathBuf>,
}

impl IrreducibleCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        IrreducibleCache { dir }
    }

    fn path(dir: &Path, q: u64, d: u32) -> PathBuf {
        dir.join(format!("irr-q{q}-d{d}.json"))
    }

    /// Sorted monic irreducibles of degree `d` over `f`. A cached list is
    /// used only if it has the right length, order and degrees.
    pub fn irreducibles(&self, f: &Field, d: u32) -> primcyc::Result<Vec<Poly>> {
        let q = f.size() as u64;
        let Some(dir) = &self.dir else {
            return enum_irreducibles(f, d);
        };
        let path = Self::path(dir, q, d);
        if let Some(polys) = Self::load(&path, q, d) {
            return Ok(polys);
        }
        let polys = enum_irreducibles(f, d)?;
        let entry = Entry { q, d, polys: polys.iter().map(|p| p.coeffs().iter().map(|c| c.0).collect()).collect() };
        // A failed write only loses the optimisation.
        if fs::create_dir_all(dir).is_ok() {
            if let Ok(text) = serde_json::to_string(&entry) {
                let tmp = path.with_extension("tmp");
                if fs::write(&tmp, text).is_ok() {
                    let _ = fs::rename(&tmp, &path);
                }
            }
        }
        Ok(polys)
    }

    fn load(path: &Path, q: u64, d: u32) -> Option<Vec<Poly>> {
        let entry: Entry = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
        if entry.q != q || entry.d != d || entry.polys.len() as u128 != count_irreducibles(q, d).ok()? {
            return None;
        }
        let polys: Vec<Poly> = entry
            .polys
            .into_iter()
            .map(|c| Poly::from_coeffs(c.into_iter().map(Elem).collect()))
            .collect();
        let shaped = polys.iter().all(|p| p.deg() == d as usize && p.is_monic() && p.coeffs().iter().all(|c| (c.0 as u64) < q));
        let sorted = polys.windows(2).all(|w| w[0] < w[1]);
        (shaped && sorted).then_some(polys)
    }
}
