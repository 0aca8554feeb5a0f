//! Exact hermitian geometry over finite local rings with involution:
//! ring construction, form classification, explicit unitary-group elements
//! (transitivity witnesses, lifts along the canonical epimorphism,
//! stabilizer completions), closed-form group orders and Weil character
//! degrees, and a brute-force enumeration oracle that cross-checks all of
//! the above on small instances.

pub mod checks;
pub mod counting;
pub mod error;
pub mod group;
pub mod hermitian;
pub mod linalg;
pub mod oracle;
pub mod ring;
pub mod serial;

pub use error::{Error, Result};
pub use hermitian::{HermitianSpace, Kind};
pub use linalg::Mat;
pub use ring::{Element, Family, FixedElement, Ring, RingSpec, StructConstants, Subset};
