#include "tindb/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "tindb/closure.hpp"

namespace tindb::kernels {

double pairwise_tree_sum(std::vector<double> leaves) {
    if (leaves.empty()) return 0.0;
    while (leaves.size() > 1) {
        std::size_t out = 0;
        std::size_t i = 0;
        for (; i + 1 < leaves.size(); i += 2) leaves[out++] = leaves[i] + leaves[i + 1];
        if (i < leaves.size()) leaves[out++] = leaves[i];  // odd tail carries up
        leaves.resize(out);
    }
    return leaves[0];
}

double face_volume_term(const Triangle& tri) {
    return dot(tri.v0, tri.scaled_normal()) / 6.0;
}

double mesh_volume(const TriangleMesh& mesh, const ExecutorConfig& cfg, bool* closed_out) {
    if (cfg.volume_policy == VolumePolicy::Strict || closed_out != nullptr) {
        const ClosureReport report = validate_closed(mesh);
        if (closed_out != nullptr) *closed_out = report.is_closed;
        if (cfg.volume_policy == VolumePolicy::Strict && !report.is_closed)
            throw MeshNotClosed("mesh is not watertight: " +
                                std::to_string(report.boundary_edge_count) + " boundary edge(s), " +
                                std::to_string(report.inconsistent_edge_count) +
                                " inconsistent directed edge use(s)");
    }

    const std::size_t n = mesh.face_count();
    std::vector<double> leaves(cfg.chunk_count(n), 0.0);
    for_each_chunk(cfg, n, [&](std::size_t k, std::size_t begin, std::size_t end) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) acc += face_volume_term(mesh.triangles[i]);
        leaves[k] = acc;
    });
    return pairwise_tree_sum(std::move(leaves));
}

namespace {

constexpr double kTiny = 1e-300;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

DistanceResult make_pair_result(const Point3& on_a, const Point3& on_b) {
    DistanceResult r;
    r.closest_on_a = on_a;
    r.closest_on_b = on_b;
    r.distance = norm(on_a - on_b);
    return r;
}

// Closest point on a segment to a point; returns the segment parameter.
double closest_param_on_segment(const Point3& p, const LineSegment& seg) {
    const Point3 d = seg.direction();
    const double dd = norm2(d);
    if (dd <= kTiny) return 0.0;
    return clamp01(dot(p - seg.p0, d) / dd);
}

}  // namespace

DistanceResult segment_segment_distance(const LineSegment& a, const LineSegment& b) {
    // Constrained quadratic over (s, t) in [0,1]^2, minimized by computing
    // the unconstrained solution and walking the clamped boundary cases.
    const Point3 d1 = a.direction();
    const Point3 d2 = b.direction();
    const Point3 r = a.p0 - b.p0;
    const double aa = norm2(d1);
    const double ee = norm2(d2);
    const double f = dot(d2, r);

    double s = 0.0;
    double t = 0.0;
    if (aa <= kTiny && ee <= kTiny) {
        // both segments are points
    } else if (aa <= kTiny) {
        t = clamp01(f / ee);
    } else {
        const double c = dot(d1, r);
        if (ee <= kTiny) {
            s = clamp01(-c / aa);
        } else {
            const double bb = dot(d1, d2);
            const double denom = aa * ee - bb * bb;  // >= 0, 0 when parallel
            if (denom > kTiny) {
                s = clamp01((bb * f - c * ee) / denom);
            }
            t = (bb * s + f) / ee;
            if (t < 0.0) {
                t = 0.0;
                s = clamp01(-c / aa);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp01((bb - c) / aa);
            }
        }
    }

    DistanceResult result = make_pair_result(a.p0 + s * d1, b.p0 + t * d2);
    SurfaceParams params;
    params.t = s;  // parameter along the query segment
    params.u = t;  // parameter along the target segment
    params.v = 0.0;
    result.params = params;
    return result;
}

namespace {

DistanceResult point_segment_distance(const Point3& p, const LineSegment& seg) {
    const double t = closest_param_on_segment(p, seg);
    DistanceResult r = make_pair_result(p, seg.p0 + t * seg.direction());
    return r;
}

// Degenerate triangles collapse to their edge set.
DistanceResult point_degenerate_triangle_distance(const Point3& p, const Triangle& tri) {
    DistanceResult best = point_segment_distance(p, LineSegment{tri.v0, tri.v1});
    DistanceResult e1 = point_segment_distance(p, LineSegment{tri.v0, tri.v2});
    if (e1.distance < best.distance) best = e1;
    DistanceResult e2 = point_segment_distance(p, LineSegment{tri.v1, tri.v2});
    if (e2.distance < best.distance) best = e2;
    return best;
}

}  // namespace

DistanceResult point_triangle_distance(const Point3& p, const Triangle& tri) {
    // Region-classified constrained minimization of |V0 + u*e0 + v*e1 - p|^2
    // over the triangle domain (interior, three edges, three vertices).
    const Point3 e0 = tri.edge0();
    const Point3 e1 = tri.edge1();
    const Point3 diff = tri.v0 - p;
    const double a00 = norm2(e0);
    const double a01 = dot(e0, e1);
    const double a11 = norm2(e1);
    const double b0 = dot(diff, e0);
    const double b1 = dot(diff, e1);
    const double det = a00 * a11 - a01 * a01;

    if (tri.is_degenerate() || det <= kTiny) {
        DistanceResult r = point_degenerate_triangle_distance(p, tri);
        r.closest_on_a = p;
        r.params = SurfaceParams{};  // edge basis is ill-defined here
        return r;
    }

    double s = a01 * b1 - a11 * b0;
    double t = a01 * b0 - a00 * b1;

    if (s + t <= det) {
        if (s < 0.0) {
            if (t < 0.0) {  // region 4: vertex V0 or one of its edges
                if (b0 < 0.0) {
                    t = 0.0;
                    s = -b0 >= a00 ? 1.0 : -b0 / a00;
                } else {
                    s = 0.0;
                    t = b1 >= 0.0 ? 0.0 : (-b1 >= a11 ? 1.0 : -b1 / a11);
                }
            } else {  // region 3: edge V0-V2
                s = 0.0;
                t = b1 >= 0.0 ? 0.0 : (-b1 >= a11 ? 1.0 : -b1 / a11);
            }
        } else if (t < 0.0) {  // region 5: edge V0-V1
            t = 0.0;
            s = b0 >= 0.0 ? 0.0 : (-b0 >= a00 ? 1.0 : -b0 / a00);
        } else {  // region 0: interior
            s /= det;
            t /= det;
        }
    } else {
        if (s < 0.0) {  // region 2: vertex V2 corner
            const double tmp0 = a01 + b0;
            const double tmp1 = a11 + b1;
            if (tmp1 > tmp0) {
                const double numer = tmp1 - tmp0;
                const double denom = a00 - 2.0 * a01 + a11;
                s = numer >= denom ? 1.0 : numer / denom;
                t = 1.0 - s;
            } else {
                s = 0.0;
                t = tmp1 <= 0.0 ? 1.0 : (b1 >= 0.0 ? 0.0 : -b1 / a11);
            }
        } else if (t < 0.0) {  // region 6: vertex V1 corner
            const double tmp0 = a01 + b1;
            const double tmp1 = a00 + b0;
            if (tmp1 > tmp0) {
                const double numer = tmp1 - tmp0;
                const double denom = a00 - 2.0 * a01 + a11;
                t = numer >= denom ? 1.0 : numer / denom;
                s = 1.0 - t;
            } else {
                t = 0.0;
                s = tmp1 <= 0.0 ? 1.0 : (b0 >= 0.0 ? 0.0 : -b0 / a00);
            }
        } else {  // region 1: edge V1-V2
            const double numer = a11 + b1 - a01 - b0;
            if (numer <= 0.0) {
                s = 0.0;
            } else {
                const double denom = a00 - 2.0 * a01 + a11;
                s = numer >= denom ? 1.0 : numer / denom;
            }
            t = 1.0 - s;
        }
    }

    const Point3 closest = tri.v0 + s * e0 + t * e1;
    DistanceResult result = make_pair_result(p, closest);
    SurfaceParams params;
    params.t = 0.0;
    params.u = clamp01(s);
    params.v = clamp01(t);
    result.params = params;
    return result;
}

namespace {

// Cramer solve of u*e0 + v*e1 - t*d = -w; when (e0, e1, d) are linearly
// independent the unconstrained minimum of Q is exact interpolation (Q = 0).
struct InteriorSolve {
    bool valid = false;
    double u = 0.0, v = 0.0, t = 0.0;
};

InteriorSolve solve_interior(const Point3& e0, const Point3& e1, const Point3& d,
                             const Point3& w) {
    InteriorSolve sol;
    const Point3 pvec = cross(d, e1);
    const double denom = dot(pvec, e0);
    const double scale = norm(d) * norm(e0) * norm(e1);
    if (std::abs(denom) <= kIntersectDenominatorEps * scale) return sol;
    const double inv = 1.0 / denom;
    const Point3 qvec = cross(w, e0);
    sol.t = dot(qvec, e1) * inv;
    sol.u = dot(pvec, w) * inv;
    sol.v = dot(qvec, d) * inv;
    sol.valid = true;
    return sol;
}

}  // namespace

DistanceResult segment_triangle_distance(const LineSegment& seg, const Triangle& tri) {
    if (seg.is_degenerate()) {
        DistanceResult r = point_triangle_distance(seg.p0, tri);
        return r;
    }

    const Point3 d = seg.direction();
    const Point3 e0 = tri.edge0();
    const Point3 e1 = tri.edge1();

    if (!tri.is_degenerate()) {
        // Interior critical point: positive definite iff (e0, e1, d) span
        // R^3, in which case the segment's line pierces the triangle plane
        // and the in-domain solution has distance ~0.
        const InteriorSolve sol = solve_interior(e0, e1, d, seg.p0 - tri.v0);
        if (sol.valid && sol.u >= 0.0 && sol.v >= 0.0 && sol.u + sol.v <= 1.0 && sol.t >= 0.0 &&
            sol.t <= 1.0) {
            const Point3 on_seg = seg.p0 + sol.t * d;
            const Point3 on_tri = tri.v0 + sol.u * e0 + sol.v * e1;
            DistanceResult result = make_pair_result(on_seg, on_tri);
            result.params = SurfaceParams{sol.t, sol.u, sol.v};
            return result;
        }
    }

    // Boundary of the product domain: three triangle edges against the
    // segment, two segment endpoints against the triangle.
    DistanceResult best;
    best.distance = std::numeric_limits<double>::infinity();

    struct EdgeMap {
        LineSegment edge;
        // (u, v) as an affine function of the edge parameter:
        // u = u0 + s*du, v = v0 + s*dv
        double u0, du, v0, dv;
    };
    const EdgeMap edges[3] = {
        {{tri.v0, tri.v1}, 0.0, 1.0, 0.0, 0.0},
        {{tri.v0, tri.v2}, 0.0, 0.0, 0.0, 1.0},
        {{tri.v1, tri.v2}, 1.0, -1.0, 0.0, 1.0},
    };
    for (const EdgeMap& em : edges) {
        DistanceResult cand = segment_segment_distance(seg, em.edge);
        if (cand.distance < best.distance) {
            const double s_edge = cand.params ? cand.params->u : 0.0;
            const double t_seg = cand.params ? cand.params->t : 0.0;
            cand.params = SurfaceParams{t_seg, em.u0 + s_edge * em.du, em.v0 + s_edge * em.dv};
            best = cand;
        }
    }

    const Point3 endpoints[2] = {seg.p0, seg.p1};
    for (int i = 0; i < 2; ++i) {
        DistanceResult cand = point_triangle_distance(endpoints[i], tri);
        if (cand.distance < best.distance) {
            if (cand.params) cand.params->t = static_cast<double>(i);
            best = cand;
        }
    }
    return best;
}

IntersectionResult segment_triangle_intersect(const LineSegment& seg, const Triangle& tri) {
    IntersectionResult result;
    const Point3 d = seg.direction();
    const Point3 e0 = tri.edge0();
    const Point3 e1 = tri.edge1();
    const Point3 w = seg.p0 - tri.v0;

    const InteriorSolve sol = solve_interior(e0, e1, d, w);
    if (!sol.valid) return result;  // parallel, coplanar, or degenerate

    const double slack = kBarycentricSlack;
    if (sol.t < -slack || sol.t > 1.0 + slack) return result;
    if (sol.u < -slack || sol.v < -slack || sol.u + sol.v > 1.0 + slack) return result;

    result.hit = true;
    result.point = seg.p0 + clamp01(sol.t) * d;
    result.params = IntersectionParams{sol.t, sol.u, sol.v, 1.0 - sol.u - sol.v};
    return result;
}

namespace {

struct ChunkBest {
    double distance = std::numeric_limits<double>::infinity();
    std::size_t face = 0;
    DistanceResult result;
};

template <typename PerFace>
DistanceResult reduce_min_over_faces(const TriangleMesh& mesh, const ExecutorConfig& cfg,
                                     PerFace&& per_face) {
    const std::size_t n = mesh.face_count();
    const bool skip_degenerate = mesh.has_degenerate_faces;
    std::vector<ChunkBest> partials(cfg.chunk_count(n));

    for_each_chunk(cfg, n, [&](std::size_t k, std::size_t begin, std::size_t end) {
        ChunkBest best;
        for (std::size_t i = begin; i < end; ++i) {
            const Triangle& tri = mesh.triangles[i];
            if (skip_degenerate && tri.is_degenerate()) continue;
            DistanceResult r = per_face(tri);
            if (r.distance < best.distance) {
                best.distance = r.distance;
                best.face = i;
                best.result = std::move(r);
            }
        }
        partials[k] = std::move(best);
    });

    // Merge in chunk order; strict < keeps the lowest face index on ties.
    DistanceResult out;
    out.distance = std::numeric_limits<double>::infinity();
    for (ChunkBest& p : partials) {
        if (p.distance < out.distance) {
            out = std::move(p.result);
            out.face_index = p.face;
        }
    }
    return out;
}

}  // namespace

DistanceResult distance_to_mesh(const Point3& query, const TriangleMesh& mesh,
                                const ExecutorConfig& cfg) {
    return reduce_min_over_faces(mesh, cfg,
                                 [&](const Triangle& tri) { return point_triangle_distance(query, tri); });
}

DistanceResult distance_to_mesh(const LineSegment& query, const TriangleMesh& mesh,
                                const ExecutorConfig& cfg) {
    if (query.is_degenerate()) return distance_to_mesh(query.p0, mesh, cfg);
    return reduce_min_over_faces(
        mesh, cfg, [&](const Triangle& tri) { return segment_triangle_distance(query, tri); });
}

DistanceResult distance_to_mesh(const Geometry& query, const TriangleMesh& mesh,
                                const ExecutorConfig& cfg) {
    switch (kind_of(query)) {
        case GeometryKind::Point:
            return distance_to_mesh(std::get<Point3>(query), mesh, cfg);
        case GeometryKind::Segment:
            return distance_to_mesh(segment_view(query), mesh, cfg);
        default:
            throw std::invalid_argument("distance_to_mesh: query must be a point or a segment");
    }
}

IntersectionResult intersects_mesh(const LineSegment& query, const TriangleMesh& mesh,
                                   const ExecutorConfig& cfg) {
    const std::size_t n = mesh.face_count();
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};

    for_each_chunk(cfg, n, [&](std::size_t, std::size_t begin, std::size_t end) {
        if (begin > best.load(std::memory_order_relaxed)) return;  // cannot improve
        for (std::size_t i = begin; i < end; ++i) {
            if (i > best.load(std::memory_order_relaxed)) return;
            if (segment_triangle_intersect(query, mesh.triangles[i]).hit) {
                // atomic min
                std::size_t seen = best.load(std::memory_order_relaxed);
                while (i < seen && !best.compare_exchange_weak(seen, i, std::memory_order_relaxed)) {
                }
                return;
            }
        }
    });

    const std::size_t found = best.load(std::memory_order_relaxed);
    if (found == std::numeric_limits<std::size_t>::max()) return {};

    IntersectionResult result = segment_triangle_intersect(query, mesh.triangles[found]);
    result.face_index = found;
    return result;
}

}  // namespace tindb::kernels
