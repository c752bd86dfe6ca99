//! Quantum state randomization built from Pauli operators and small-bias
//! sample spaces.
//!
//! A *randomizing channel* maps every `n`-qubit state close to the
//! maximally mixed state `I/2^n`. This crate provides:
//!
//! * [`bitlin`]: GF(2) vectors and matrices, the symplectic form.
//! * [`gf2ext`]: arithmetic in GF(2^r) over a verified primitive polynomial.
//! * [`smallbias`]: sample spaces, the AGHP powering construction, bias and
//!   k-wise independence metrics.
//! * [`pauli`]: symplectic Pauli operators and stabilizer groups.
//! * [`linalg`]: dense complex matrices, Jacobi eigenvalues, matrix norms and
//!   seeded random states/unitaries.
//! * [`channel`]: the one-time pad, small-bias channels, random Pauli channels,
//!   Haar channels and the Fourier certificate.
//! * [`verify`]: worst-case state search and the necessary-condition
//!   diagnostics that lower-bound a channel's true epsilon.
//! * [`cli`]: the `qrand` command-line front end.
//!
//! Security caveat: every guarantee here concerns inputs that are states of
//! the `n` message qubits alone. An adversary holding a purification (for
//! instance half of a maximally entangled pair) is not covered; an
//! approximate scheme with fewer than `4^n` keys cannot randomize that
//! input because the output rank is at most the key count times `2^n`.

pub mod bitlin;
pub mod channel;
pub mod cli;
mod error;
pub mod gf2ext;
pub mod linalg;
pub mod pauli;
pub mod smallbias;
pub mod verify;

pub use error::{Error, Result};
