#pragma once

// Poincare-disk layout and SVG rendering of a solved fundamental domain.
//
// The incircle center sits at the origin. A point at hyperbolic distance d
// from the origin lies at Euclidean radius tanh(d/2): the disk metric is
// ds = 2|dz|/(1-|z|^2), and integrating along a radius gives
// d = 2 atanh(r).
//
// Each polygon vertex is the apex of two mirror right triangles (center,
// vertex, tangency point) with angle alpha/2 at the vertex and beta/2 at the
// center. The hypotenuse d (center to vertex) satisfies
//
//   cosh d = cot(alpha/2) cot(beta/2)
//
// and the leg x (the incircle radius) satisfies cos(alpha/2) = cosh x sin(beta/2).
// Vertex k therefore sits on the bisector of its central wedge, and the
// tangency points sit on the wedge boundaries at Euclidean radius tanh(x/2).
//
// Corner order: the census fixes only how many corners of each kind exist.
// Layouts use a caterpillar tree: the spine holds the additional points
// (ascending degree) followed by the non-leaf rotation centers (ascending
// degree), and every spine vertex carries its leaves. The polygon corners are
// read off a walk around this tree, which is the cut-and-unfold order.

#include "hypin/domain_enum.hpp"
#include "hypin/hyp_trig.hpp"
#include "hypin/incircle_solver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hypin {

struct DiskPoint {
    double x = 0.0;
    double y = 0.0;

    double norm() const;
};

/// One corner of the unfolded polygon.
struct Corner {
    std::string label;   // R<k> for rotation centers, P<k> for additional points
    bool additional = false;
    int degree = 0;      // tree degree of the owning vertex
    double alpha = 0.0;  // corner angle
};

struct PolygonLayout {
    std::vector<DiskPoint> vertices;
    std::vector<DiskPoint> tangency_points;  // tangency_points[k] lies on the side from vertex k to k+1
    double incircle_euclidean_radius = 0.0;
    double incircle_radius = 0.0;  // hyperbolic x
    std::vector<std::pair<AngleValue, AngleValue>> angle_sequence;  // (alpha, beta) per vertex
    std::vector<std::string> vertex_labels;
};

/// Hyperbolic distance from the incircle center to a vertex with corner angle
/// alpha and central angle beta.
double vertex_distance(AngleValue alpha, AngleValue beta);

/// Polygon corners in walk order for the canonical caterpillar tree.
std::vector<Corner> corner_sequence(const TreeTypeSolution& sol);

PolygonLayout layout_polygon(const TreeTypeSolution& sol, const IncircleResult& res);

/// Layout from an explicit (alpha, beta) sequence around an incircle of
/// radius x; the first wedge starts at polar angle `start_angle`.
PolygonLayout layout_from_sequence(std::vector<std::pair<AngleValue, AngleValue>> sequence, CoshRadius x,
                                   std::vector<std::string> labels = {}, double start_angle = 0.0);

/// Hyperbolic line through two disk points: a diameter or an arc of a circle
/// orthogonal to the unit circle.
struct Geodesic {
    bool diameter = false;
    DiskPoint center;  // arc circle center (unused for diameters)
    double radius = 0.0;
};

Geodesic geodesic_through(DiskPoint p, DiskPoint q);

/// Hyperbolic distance from the origin to the geodesic.
double geodesic_distance_from_origin(const Geodesic& g);

/// Angle at v between the geodesic segments towards prev and next.
double vertex_interior_angle(DiskPoint prev, DiskPoint v, DiskPoint next);

/// Distance from the origin to each polygon side.
std::vector<double> side_distances(const PolygonLayout& layout);

/// Interior angle of the drawn polygon at each vertex.
std::vector<double> measured_vertex_angles(const PolygonLayout& layout);

struct RenderOptions {
    int canvas_size = 1000;
    double disk_radius = 480.0;
    double boundary_stroke = 2.0;
    double side_stroke = 2.5;
    double incircle_stroke = 1.5;
    double point_radius = 4.0;
    std::string boundary_color = "#222222";
    std::string side_color = "#1f5fa8";
    std::string incircle_color = "#c0392b";
    std::string tangency_color = "#c0392b";
    std::string vertex_color = "#111111";
    bool labels = true;
};

/// SVG 1.1 document; identical bytes for identical inputs.
std::string render_svg(const PolygonLayout& layout, const RenderOptions& opts = {});

}  // namespace hypin
