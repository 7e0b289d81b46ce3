//! Metric spaces whose distances are known exactly or by mesh shortest paths.
//!
//! * [`cone`]: circles and lines, Euclidean cones over them (the branched
//!   covers of the plane at one point), and a generic cone over any base.
//! * [`crushed`]: the closed half-plane with its boundary line collapsed to a
//!   single point.
//! * [`mesh`]: graph approximations of surfaces of revolution, in particular
//!   the cusped surface obtained by rotating y = x².

pub mod cone;
pub mod crushed;
pub mod mesh;

pub use cone::{
    circle_cat_scan, circle_distance, cone_cat_scan, cone_distance, cone_geodesic_point,
    cone_hypothesis_c, cone_local_geodesic_count, Circle, CircleCone, CirclePoint, ConePoint,
    EuclideanCone,
};
pub use crushed::{
    crushed_cat_witness, crushed_distance, crushed_edge_at_zero_scan,
    crushed_edge_at_zero_triangle, crushed_geodesic_point, crushed_hypothesis_c, CrushedHalfPlane,
    CrushedPoint,
};
pub use mesh::{
    cusp_germ_ratios, mesh_bigon, mesh_distance, parabola_arclength, revolution_mesh, Bigon,
    CuspGerms, MeshExport, MeshPath, Profile, RevolutionMesh,
};
