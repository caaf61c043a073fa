//! JSON form of every certificate kind, and exact re-verification against a
//! matroid.
//!
//! Rationals are written as `"p/q"` strings, indices and elements 1-based,
//! matrices row-major with both symmetric entries stored.

use serde::{Deserialize, Serialize, Serializer};

use crate::linalg::{Ldl, RatMatrix};
use crate::matroid::{Matroid, MinorWitness};
use crate::negsearch::NegativePointCertificate;
use crate::poly::{self, Poly};
use crate::rational::{self, Rat};
use crate::realroot::NonRealWitness;
use crate::sos::{self, DualPsdCertificate, GramSystem, SosCertificate};
use crate::subset;

pub fn ser_rat<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_string(q))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

fn malformed(msg: impl Into<String>) -> CertificateError {
    CertificateError::Malformed(msg.into())
}

fn rejected(msg: impl ToString) -> CertificateError {
    CertificateError::Rejected(msg.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Sos {
        i: usize,
        j: usize,
        monomials: Vec<Vec<u8>>,
        gram: Vec<Vec<String>>,
    },
    DualPsd {
        i: usize,
        j: usize,
        monomials: Vec<Vec<u8>>,
        #[serde(rename = "A")]
        a: Vec<Vec<String>>,
    },
    NegativePoint {
        i: usize,
        j: usize,
        x: Vec<String>,
        value: String,
    },
    NonrealDirection {
        e: Vec<u8>,
        v: Vec<u8>,
        degree: usize,
        real_roots: usize,
    },
    ForbiddenMinor {
        minor: String,
        /// The excluded minor itself: element count, rank, nonbases.
        minor_n: usize,
        minor_rank: usize,
        minor_nonbases: Vec<Vec<usize>>,
        deleted: Vec<usize>,
        contracted: Vec<usize>,
        relabeling: Vec<usize>,
    },
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(rational::to_string).collect()).collect()
}

fn parse_matrix(m: &[Vec<String>]) -> Result<RatMatrix, CertificateError> {
    m.iter().map(|r| r.iter().map(|s| rational::parse(s).map_err(|e| malformed(e.0))).collect()).collect()
}

fn exps(nvars: usize, monomials: &[poly::ExpKey]) -> Vec<Vec<u8>> {
    monomials.iter().map(|&k| poly::unpack(k, nvars)).collect()
}

fn keys(nvars: usize, monomials: &[Vec<u8>]) -> Result<Vec<poly::ExpKey>, CertificateError> {
    monomials
        .iter()
        .map(|e| {
            if e.len() != nvars || e.iter().any(|&x| x > 1) {
                Err(malformed("monomial exponent vector of wrong length or degree"))
            } else {
                Ok(poly::pack(e))
            }
        })
        .collect()
}

fn zero_based(i: usize, j: usize, n: usize) -> Result<(usize, usize), CertificateError> {
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(malformed("index pair out of range"));
    }
    Ok((i - 1, j - 1))
}

impl Certificate {
    pub fn from_sos(c: &SosCertificate) -> Certificate {
        Certificate::Sos {
            i: c.i + 1,
            j: c.j + 1,
            monomials: exps(c.nvars, &c.monomials),
            gram: matrix_strings(&c.gram),
        }
    }

    pub fn from_dual(c: &DualPsdCertificate) -> Certificate {
        Certificate::DualPsd { i: c.i + 1, j: c.j + 1, monomials: exps(c.nvars, &c.monomials), a: matrix_strings(&c.a) }
    }

    pub fn from_negative(c: &NegativePointCertificate) -> Certificate {
        Certificate::NegativePoint {
            i: c.i + 1,
            j: c.j + 1,
            x: c.point.iter().map(rational::to_string).collect(),
            value: rational::to_string(&c.value),
        }
    }

    pub fn from_nonreal(w: &NonRealWitness) -> Certificate {
        Certificate::NonrealDirection { e: w.e.clone(), v: w.v.clone(), degree: w.degree, real_roots: w.real_roots }
    }

    pub fn from_minor(name: &str, minor: &Matroid, w: &MinorWitness) -> Certificate {
        Certificate::ForbiddenMinor {
            minor: name.to_string(),
            minor_n: minor.n(),
            minor_rank: minor.rank(),
            minor_nonbases: minor.nonbases().iter().map(|&s| subset::to_elements(s)).collect(),
            deleted: subset::to_elements(w.deleted),
            contracted: subset::to_elements(w.contracted),
            relabeling: w.relabeling.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Sos { .. } => "sos",
            Certificate::DualPsd { .. } => "dual_psd",
            Certificate::NegativePoint { .. } => "negative_point",
            Certificate::NonrealDirection { .. } => "nonreal_direction",
            Certificate::ForbiddenMinor { .. } => "forbidden_minor",
        }
    }

    /// Whether a valid certificate of this kind proves the half-plane
    /// property fails (as opposed to an SOS or non-SOS statement).
    pub fn disproves_hpp(&self) -> bool {
        matches!(
            self,
            Certificate::NegativePoint { .. }
                | Certificate::NonrealDirection { .. }
                | Certificate::ForbiddenMinor { .. }
        )
    }

    /// Index pair (1-based) the certificate is about, if any.
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self {
            Certificate::Sos { i, j, .. }
            | Certificate::DualPsd { i, j, .. }
            | Certificate::NegativePoint { i, j, .. } => Some((*i.min(j), *i.max(j))),
            _ => None,
        }
    }

    /// Exact re-verification against the basis generating polynomial of `m`.
    pub fn verify(&self, m: &Matroid) -> Result<(), CertificateError> {
        let n = m.n();
        let h = Poly::basis_polynomial(m);
        match self {
            Certificate::Sos { i, j, monomials, gram } => {
                let (i, j) = zero_based(*i, *j, n)?;
                let gram = parse_matrix(gram)?;
                let ldl = Ldl::factor_psd(&gram).map_err(rejected)?;
                let cert = SosCertificate { i, j, nvars: n, monomials: keys(n, monomials)?, gram, ldl };
                let delta = h.rayleigh_difference(i, j).map_err(rejected)?;
                sos::verify_sos(&cert, &delta).map_err(rejected)
            }
            Certificate::DualPsd { i, j, monomials, a } => {
                let (i, j) = zero_based(*i, *j, n)?;
                let a = parse_matrix(a)?;
                let ldl = Ldl::factor_pd(&a).map_err(rejected)?;
                let cert = DualPsdCertificate { i, j, nvars: n, monomials: keys(n, monomials)?, a, ldl };
                let delta = h.rayleigh_difference(i, j).map_err(rejected)?;
                let system = GramSystem::new(&delta, i, j).map_err(rejected)?;
                sos::verify_dual(&cert, &system).map_err(rejected)
            }
            Certificate::NegativePoint { i, j, x, value } => {
                let (i, j) = zero_based(*i, *j, n)?;
                let point: Vec<Rat> =
                    x.iter().map(|s| rational::parse(s).map_err(|e| malformed(e.0))).collect::<Result<_, _>>()?;
                let value = rational::parse(value).map_err(|e| malformed(e.0))?;
                let cert = NegativePointCertificate { i, j, point, value };
                if cert.verify(&h) {
                    Ok(())
                } else {
                    Err(rejected("value is not negative or does not match"))
                }
            }
            Certificate::NonrealDirection { e, v, degree, real_roots } => {
                let w = NonRealWitness { e: e.clone(), v: v.clone(), degree: *degree, real_roots: *real_roots };
                if w.verify(&h) {
                    Ok(())
                } else {
                    Err(rejected("restriction is real-rooted or counts differ"))
                }
            }
            Certificate::ForbiddenMinor {
                minor_n,
                minor_rank,
                minor_nonbases,
                deleted,
                contracted,
                relabeling,
                ..
            } => {
                let nb: Vec<subset::Subset> = minor_nonbases.iter().map(|l| subset::from_elements(l)).collect();
                let minor = Matroid::from_nonbases(*minor_n, *minor_rank, &nb).map_err(|e| malformed(e.to_string()))?;
                let w = MinorWitness {
                    deleted: subset::from_elements(deleted),
                    contracted: subset::from_elements(contracted),
                    relabeling: relabeling.clone(),
                };
                if w.verify(m, &minor) {
                    Ok(())
                } else {
                    Err(rejected("minor witness does not reproduce the excluded minor"))
                }
            }
        }
    }
}
