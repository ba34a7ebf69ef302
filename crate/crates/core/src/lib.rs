//! Exact p-adic dynamics of rational maps over `Q` and `Q(sqrt p)`:
//! valuations, reduction, periodic points, disk geometry, and the
//! construction of Herman-ring cycles from cycles of Siegel disks.

pub mod geometry;
pub mod herman;
pub mod padic;
pub mod poly;
pub mod ratmap;
pub mod report;
pub mod selftest;
