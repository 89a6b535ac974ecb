#include "hypin/geometry_render.hpp"

#include "hypin/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace hypin {

double DiskPoint::norm() const {
    return std::hypot(x, y);
}

double vertex_distance(AngleValue alpha, AngleValue beta) {
    const double product = 1.0 / (std::tan(alpha.radians() / 2.0) * std::tan(beta.radians() / 2.0));
    if (!std::isfinite(product) || !(product > 1.0)) {
        throw DomainError("cot(alpha/2) cot(beta/2) must exceed 1");
    }
    return std::acosh(product);
}

namespace {

struct TreeNode {
    bool additional = false;
    int degree = 0;
    std::vector<int> adjacency;  // cyclic order of neighbors
    std::string label;
};

// Caterpillar tree realizing the census, with a fixed planar embedding.
std::vector<TreeNode> caterpillar(const TreeTypeSolution& sol) {
    std::vector<TreeNode> nodes;
    for (int j = 3; j <= sol.l; ++j) {
        for (int c = 0; c < sol.b(j); ++c) {
            nodes.push_back({true, j, {}, {}});
        }
    }
    for (int i = 2; i <= sol.l - 1; ++i) {
        for (int c = 0; c < sol.a(i); ++c) {
            nodes.push_back({false, i, {}, {}});
        }
    }
    const int spine = static_cast<int>(nodes.size());
    for (int c = 0; c < sol.a(1); ++c) {
        nodes.push_back({false, 1, {}, {}});
    }
    int next_leaf = spine;
    for (int s = 0; s < spine; ++s) {
        auto& node = nodes[static_cast<std::size_t>(s)];
        const int spine_links = (s > 0 ? 1 : 0) + (s + 1 < spine ? 1 : 0);
        if (s > 0) {
            node.adjacency.push_back(s - 1);
        }
        for (int k = 0; k < node.degree - spine_links; ++k) {
            node.adjacency.push_back(next_leaf);
            nodes[static_cast<std::size_t>(next_leaf)].adjacency.push_back(s);
            ++next_leaf;
        }
        if (s + 1 < spine) {
            node.adjacency.push_back(s + 1);
        }
    }
    if (spine == 0 || next_leaf != static_cast<int>(nodes.size())) {
        throw InvalidArgument("census " + sol.descriptor() + " admits no caterpillar tree");
    }
    return nodes;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000") {
        s = "0.0000";
    }
    return s;
}

}  // namespace

std::vector<Corner> corner_sequence(const TreeTypeSolution& sol) {
    auto nodes = caterpillar(sol);
    std::vector<int> visits;
    int from = 0;
    int to = nodes[0].adjacency.front();
    const int steps = 2 * (static_cast<int>(nodes.size()) - 1);
    for (int step = 0; step < steps; ++step) {
        visits.push_back(to);
        const auto& adj = nodes[static_cast<std::size_t>(to)].adjacency;
        const auto pos = std::find(adj.begin(), adj.end(), from) - adj.begin();
        const int next = adj[static_cast<std::size_t>((pos + 1) % static_cast<long>(adj.size()))];
        from = to;
        to = next;
    }

    int rotation_count = 0;
    int additional_count = 0;
    for (int s = 0; s < static_cast<int>(nodes.size()); ++s) {
        if (nodes[static_cast<std::size_t>(s)].additional) {
            nodes[static_cast<std::size_t>(s)].label = "P" + std::to_string(++additional_count);
        }
    }
    std::vector<Corner> corners;
    for (int v : visits) {
        auto& node = nodes[static_cast<std::size_t>(v)];
        if (node.label.empty()) {
            node.label = "R" + std::to_string(++rotation_count);
        }
        const double alpha =
            node.additional ? additional_corner_angle(node.degree) : rotational_corner_angle(node.degree);
        corners.push_back({node.label, node.additional, node.degree, alpha});
    }
    return corners;
}

PolygonLayout layout_from_sequence(std::vector<std::pair<AngleValue, AngleValue>> sequence, CoshRadius x,
                                   std::vector<std::string> labels, double start_angle) {
    PolygonLayout layout;
    layout.incircle_radius = x.x();
    layout.incircle_euclidean_radius = std::tanh(x.x() / 2.0);
    double cumulative = start_angle;
    for (const auto& [alpha, beta] : sequence) {
        const double r = std::tanh(vertex_distance(alpha, beta) / 2.0);
        const double mid = cumulative + beta.radians() / 2.0;
        layout.vertices.push_back({r * std::cos(mid), r * std::sin(mid)});
        cumulative += beta.radians();
        layout.tangency_points.push_back(
            {layout.incircle_euclidean_radius * std::cos(cumulative), layout.incircle_euclidean_radius * std::sin(cumulative)});
    }
    if (labels.empty()) {
        for (std::size_t k = 0; k < sequence.size(); ++k) {
            labels.push_back("V" + std::to_string(k + 1));
        }
    }
    layout.angle_sequence = std::move(sequence);
    layout.vertex_labels = std::move(labels);
    return layout;
}

PolygonLayout layout_polygon(const TreeTypeSolution& sol, const IncircleResult& res) {
    std::vector<std::pair<AngleValue, AngleValue>> sequence;
    std::vector<std::string> labels;
    for (const auto& corner : corner_sequence(sol)) {
        const auto& betas = corner.additional ? res.additional_betas : res.rotational_betas;
        const auto it = betas.find(corner.degree);
        if (it == betas.end()) {
            throw InvalidArgument("result carries no central angle for corner " + corner.label);
        }
        sequence.emplace_back(AngleValue(corner.alpha), AngleValue(it->second));
        labels.push_back(corner.label);
    }
    return layout_from_sequence(std::move(sequence), res.cosh_x, std::move(labels));
}

Geodesic geodesic_through(DiskPoint p, DiskPoint q) {
    // Circle centers c orthogonal to the unit circle through p and q satisfy
    // 2 c.p = |p|^2 + 1 and 2 c.q = |q|^2 + 1.
    const double det = p.x * q.y - p.y * q.x;
    const double sp = (p.x * p.x + p.y * p.y + 1.0) / 2.0;
    const double sq = (q.x * q.x + q.y * q.y + 1.0) / 2.0;
    if (std::abs(det) < 1e-15) {
        return {true, {}, 0.0};
    }
    const DiskPoint c{(sp * q.y - sq * p.y) / det, (p.x * sq - q.x * sp) / det};
    const double radius = std::sqrt(std::max(0.0, c.x * c.x + c.y * c.y - 1.0));
    if (radius > 1e6) {
        return {true, {}, 0.0};
    }
    return {false, c, radius};
}

double geodesic_distance_from_origin(const Geodesic& g) {
    if (g.diameter) {
        return 0.0;
    }
    return 2.0 * std::atanh(g.center.norm() - g.radius);
}

namespace {

DiskPoint unit_tangent(DiskPoint v, DiskPoint toward) {
    const auto g = geodesic_through(v, toward);
    DiskPoint t{toward.x - v.x, toward.y - v.y};
    if (!g.diameter) {
        const DiskPoint radial{v.x - g.center.x, v.y - g.center.y};
        DiskPoint perp{-radial.y, radial.x};
        if (perp.x * t.x + perp.y * t.y < 0.0) {
            perp = {-perp.x, -perp.y};
        }
        t = perp;
    }
    const double len = t.norm();
    return {t.x / len, t.y / len};
}

}  // namespace

double vertex_interior_angle(DiskPoint prev, DiskPoint v, DiskPoint next) {
    const auto a = unit_tangent(v, prev);
    const auto b = unit_tangent(v, next);
    return std::acos(std::clamp(a.x * b.x + a.y * b.y, -1.0, 1.0));
}

std::vector<double> side_distances(const PolygonLayout& layout) {
    std::vector<double> out;
    const auto n = layout.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(geodesic_distance_from_origin(geodesic_through(layout.vertices[k], layout.vertices[(k + 1) % n])));
    }
    return out;
}

std::vector<double> measured_vertex_angles(const PolygonLayout& layout) {
    std::vector<double> out;
    const auto n = layout.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(vertex_interior_angle(layout.vertices[(k + n - 1) % n], layout.vertices[k],
                                            layout.vertices[(k + 1) % n]));
    }
    return out;
}

std::string render_svg(const PolygonLayout& layout, const RenderOptions& opts) {
    const double half = opts.canvas_size / 2.0;
    const auto sx = [&](const DiskPoint& p) { return format_number(half + opts.disk_radius * p.x); };
    const auto sy = [&](const DiskPoint& p) { return format_number(half - opts.disk_radius * p.y); };
    const std::string size = std::to_string(opts.canvas_size);

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + size + "\" height=\"" + size +
           "\" viewBox=\"0 0 " + size + " " + size + "\">\n";
    svg += "<circle class=\"boundary\" cx=\"" + format_number(half) + "\" cy=\"" + format_number(half) + "\" r=\"" +
           format_number(opts.disk_radius) + "\" fill=\"none\" stroke=\"" + opts.boundary_color +
           "\" stroke-width=\"" + format_number(opts.boundary_stroke) + "\"/>\n";
    svg += "<circle class=\"incircle\" cx=\"" + format_number(half) + "\" cy=\"" + format_number(half) + "\" r=\"" +
           format_number(opts.disk_radius * layout.incircle_euclidean_radius) + "\" fill=\"none\" stroke=\"" +
           opts.incircle_color + "\" stroke-width=\"" + format_number(opts.incircle_stroke) + "\"/>\n";

    const std::string side_style = "fill=\"none\" stroke=\"" + opts.side_color + "\" stroke-width=\"" +
                                   format_number(opts.side_stroke) + "\"";
    const auto n = layout.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& p = layout.vertices[k];
        const auto& q = layout.vertices[(k + 1) % n];
        const auto g = geodesic_through(p, q);
        if (g.diameter) {
            svg += "<line class=\"side\" x1=\"" + sx(p) + "\" y1=\"" + sy(p) + "\" x2=\"" + sx(q) + "\" y2=\"" +
                   sy(q) + "\" " + side_style + "/>\n";
            continue;
        }
        // Orientation of the minor arc in screen coordinates (y down).
        const double cross = (p.x - g.center.x) * (-(q.y - g.center.y)) - (-(p.y - g.center.y)) * (q.x - g.center.x);
        const std::string r = format_number(opts.disk_radius * g.radius);
        svg += "<path class=\"side\" d=\"M " + sx(p) + " " + sy(p) + " A " + r + " " + r + " 0 0 " +
               (cross > 0.0 ? "1" : "0") + " " + sx(q) + " " + sy(q) + "\" " + side_style + "/>\n";
    }
    for (const auto& t : layout.tangency_points) {
        svg += "<circle class=\"tangency\" cx=\"" + sx(t) + "\" cy=\"" + sy(t) + "\" r=\"" +
               format_number(opts.point_radius * 0.75) + "\" fill=\"" + opts.tangency_color + "\"/>\n";
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto& v = layout.vertices[k];
        svg += "<circle class=\"vertex\" cx=\"" + sx(v) + "\" cy=\"" + sy(v) + "\" r=\"" +
               format_number(opts.point_radius) + "\" fill=\"" + opts.vertex_color + "\"/>\n";
        if (opts.labels && k < layout.vertex_labels.size()) {
            const double scale = 1.0 + 24.0 / (opts.disk_radius * std::max(v.norm(), 1e-9));
            const DiskPoint anchor{v.x * scale, v.y * scale};
            svg += "<text class=\"label\" x=\"" + sx(anchor) + "\" y=\"" + sy(anchor) +
                   "\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\" "
                   "dominant-baseline=\"middle\">" +
                   layout.vertex_labels[k] + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace hypin
