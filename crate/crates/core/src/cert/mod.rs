//! Certificates: serialization, independent verification and the certified
//! cone of characters.

pub mod cone;
pub mod format;
pub mod verify;

pub use cone::{cone_describe, cone_eval, cone_member, ConeDescription};
pub use format::{CertError, Certificate};
pub use verify::{
    verify_certificate, verify_hom_witness, verify_htpy_witness, verify_text, verify_witness,
    Verdict,
};

use std::fmt;

/// The condition a rejected certificate violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Malformed,
    Header,
    Completeness,
    Support,
    Augmentation,
    Boundary,
    Raise,
    PathEndpoints,
    StepTooLong,
    NotADisk,
    DiskBoundary,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Malformed => "malformed certificate",
            Check::Header => "bad header",
            Check::Completeness => "incomplete table",
            Check::Support => "support violation",
            Check::Augmentation => "augmentation",
            Check::Boundary => "boundary mismatch",
            Check::Raise => "no valuation raise",
            Check::PathEndpoints => "path endpoints",
            Check::StepTooLong => "step too long",
            Check::NotADisk => "not a disk",
            Check::DiskBoundary => "disk boundary mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub check: Check,
    pub detail: String,
    /// The representative simplex at fault, if any.
    pub locus: Option<String>,
}

impl Rejection {
    pub fn new(check: Check, detail: String) -> Rejection {
        Rejection {
            check,
            detail,
            locus: None,
        }
    }

    pub fn at(check: Check, detail: String, locus: String) -> Rejection {
        Rejection {
            check,
            detail,
            locus: Some(locus),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)?;
        if let Some(l) = &self.locus {
            write!(f, " at {l}")?;
        }
        Ok(())
    }
}
