use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Fe, Field, GaloisField};
use crate::error::{Error, Result};

/// Ring embedding GF(p^n) -> GF(p^N), `n | N`, sending the small field's
/// generator to the least root (in element order) of its modulus in the large
/// field.
pub struct Embedding {
    pub from: Arc<GaloisField>,
    pub to: Arc<GaloisField>,
    forward: Vec<Fe>,
    back: HashMap<Fe, Fe>,
}

impl Embedding {
    #[inline]
    pub fn apply(&self, a: Fe) -> Fe {
        self.forward[a.0 as usize]
    }

    /// Preimage of `b`, if `b` lies in the image.
    pub fn preimage(&self, b: Fe) -> Option<Fe> {
        self.back.get(&b).copied()
    }
}

type Key = (u32, u32, u32);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn embedding(from: &Arc<GaloisField>, to: &Arc<GaloisField>) -> Result<Arc<Embedding>> {
    if from.p() != to.p() || !to.degree().is_multiple_of(from.degree()) {
        return Err(Error::invalid(format!("no embedding {:?} -> {:?}", from, to)));
    }
    let key = (from.p(), from.degree(), to.degree());
    if let Some(e) = cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let modulus = from.modulus();
    let root = if from.degree() == 1 {
        Fe(0)
    } else {
        to.elements()
            .find(|x| {
                let mut acc = Fe(0);
                for &c in modulus.iter().rev() {
                    acc = to.add(&to.mul(&acc, x), &Fe(c));
                }
                acc.0 == 0
            })
            .ok_or_else(|| Error::consistency("modulus has no root in the extension"))?
    };
    let mut powers = vec![Fe(1)];
    for _ in 1..from.degree() {
        let last = *powers.last().unwrap();
        powers.push(to.mul(&last, &root));
    }
    let forward: Vec<Fe> = from
        .elements()
        .map(|a| {
            from.digits(a)
                .iter()
                .zip(&powers)
                .fold(Fe(0), |acc, (&c, &r)| to.add(&acc, &to.mul(&Fe(c), &r)))
        })
        .collect();
    let back = forward.iter().enumerate().map(|(i, &b)| (b, Fe(i as u32))).collect();
    let emb = Arc::new(Embedding {
        from: from.clone(),
        to: to.clone(),
        forward,
        back,
    });
    Ok(cache().lock().unwrap().entry(key).or_insert(emb).clone())
}

/// `ff_embed`: move `x` from GF(p^e) into GF(p^{e·m}).
pub fn embed_element(field: &Arc<GaloisField>, x: Fe, m: i64) -> Result<(Arc<GaloisField>, Fe)> {
    if m <= 0 {
        return Err(Error::invalid("extension multiplier must be positive"));
    }
    let big = GaloisField::get(field.p(), field.degree() * m as u32)?;
    let e = embedding(field, &big)?;
    Ok((big, e.apply(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_ring_homomorphism() {
        let small = GaloisField::get(3, 2).unwrap();
        let big = GaloisField::get(3, 4).unwrap();
        let e = embedding(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.apply(small.add(&a, &b)), big.add(&e.apply(a), &e.apply(b)));
                assert_eq!(e.apply(small.mul(&a, &b)), big.mul(&e.apply(a), &e.apply(b)));
            }
            assert_eq!(e.preimage(e.apply(a)), Some(a));
        }
        assert_eq!(e.apply(Fe(2)), Fe(2));
    }

    #[test]
    fn composition_of_embeddings() {
        let f1 = GaloisField::get(2, 1).unwrap();
        let f2 = GaloisField::get(2, 2).unwrap();
        let f4 = GaloisField::get(2, 4).unwrap();
        let e12 = embedding(&f1, &f2).unwrap();
        let e24 = embedding(&f2, &f4).unwrap();
        let e14 = embedding(&f1, &f4).unwrap();
        for a in f1.elements() {
            assert_eq!(e24.apply(e12.apply(a)), e14.apply(a));
        }
        // composite is still a homomorphism even though the generator images differ
        let e = embedding(&f2, &f4).unwrap();
        let g = f2.generator();
        assert_eq!(f4.mul(&e.apply(g), &e.apply(g)), e.apply(f2.mul(&g, &g)));
    }

    #[test]
    fn embed_rejects_nonpositive() {
        let f = GaloisField::get(3, 1).unwrap();
        assert!(embed_element(&f, Fe(1), 0).is_err());
        assert!(embed_element(&f, Fe(1), -2).is_err());
    }
}
