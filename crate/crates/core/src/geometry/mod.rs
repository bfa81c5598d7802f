//! Table geometry: boundary representation, corner classification and
//! the reduced-table (inward offset) construction.

mod corner;
mod reduce;
mod table;

pub use corner::{classify_corners, CornerClass, CornerInfo, ANGLE_TOL};
pub use reduce::{
    is_visible_for_radius, reduce_table, ReducedComponent, ReducedSource, ReducedTable,
};
pub use table::{
    polygon, Arc, BoundaryComponent, ComponentDoc, Segment, Table, TableDoc, SNAP_TOL,
};
