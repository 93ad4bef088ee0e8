//! Periodic-orbit censuses: closed geodesics of the genus-2 surface, classes
//! disjoint from a simple geodesic, orbit types, and Farey tori of the
//! surgered fiber flow.

mod dd;
mod disjoint;
mod domain;
mod farey;
mod geodesic;
mod orbit_type;
mod table;
mod trace;
mod word;

pub use disjoint::{disjoint_class_census, primitive_class_oracle, DisjointCensus, MAX_LETTERS};
pub use farey::{farey_census, farey_count, farey_count_oracle, farey_fractions, FareyCensus, FareyEntry, FAREY_CSV_HEADER, FIBER_PERIOD};
pub use trace::{crossing_trace, traced_sequence, Crossing, MAX_TRACE_LENGTH};


pub use domain::{walk_class, ClassWalk};

pub use geodesic::{enumerate_classes, geodesic_table, tile_ball, CensusEntry, TileBall, MAX_CENSUS_LENGTH};
pub use orbit_type::{classify_orbit_type, find_handle, intersection_number, self_intersection, Geodesic, Handle, OrbitType};
pub use table::{least_squares, linear_edges, log_edges, CensusTable, LinearFit, TableFits, CSV_HEADER};

pub use word::Word;
