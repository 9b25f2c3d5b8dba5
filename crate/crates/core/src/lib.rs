//! # lovx-core
//!
//! Discrete set-function optimization through continuous relaxation.
//!
//! The crate turns ratio problems `min f(A)/g(A)` over families of subsets,
//! disjoint set pairs, or tuples of subsets into equivalent continuous
//! fractional programs via the Lovász extension and its multi-way variants,
//! and solves them with Dinkelbach-type and mixed inverse-power /
//! steepest-descent schemes. Everything is cross-validated against exact
//! brute-force enumeration at desk scale.
//!
//! Module map:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`setfun`] | set functions on `P(V)`, `P2(V)`, `P(V)^k`; exact enumeration oracles; DC decomposition |
//! | [`lovasz`] | the four Lovász-extension variants, subgradients, structural property checks |
//! | [`submod`] | discrete and continuous submodularity checkers, lattice operations |
//! | [`solvers`] | Dinkelbach iteration, mixed IP-SD schemes, projected and stochastic subgradient |
//! | [`graphinv`] | graphs, the extension catalog, and continuous forms of classic graph invariants |
//! | [`laplace1`] | graph 1-Laplacian eigenpair verification, Rayleigh quotients, nodal domains |
//! | [`morse`] | discrete Morse functions, order complexes, GF(2) homology, PL criticality |

pub mod graphinv;
pub mod laplace1;
pub mod lovasz;
pub mod morse;
pub mod rng;
pub mod setfun;
pub mod solvers;
pub mod submod;
