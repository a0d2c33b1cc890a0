//! Codeword-stabilized quantum codes built from uniform graph states and
//! classical tent peg codes.
//!
//! The crate is organised bottom-up:
//!
//! * [`f2core`]: packed GF(2) vectors, matrices and symplectic Pauli words.
//! * [`gf2m`]: GF(2^m) arithmetic, discrete logs and Frobenius orbits.
//! * [`graphstate`]: lattices and small graphs, stabilizer generators, uniformity.
//! * [`tentpeg`]: classical codes, the cyclic constructions, low-weight search and bounds.
//! * [`cws`]: assembling a CWS code and certifying its pure distance.
//! * [`protosim`]: exact statevector simulation of the encoding and recovery protocols.
//! * [`cli`]: the report-producing commands behind the `cws` binary.

pub mod cli;
pub mod cws;
pub mod f2core;
pub mod gf2m;
pub mod graphstate;
pub mod protosim;
pub mod tentpeg;
