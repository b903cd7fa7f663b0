#include "tindb/batch.hpp"

namespace tindb::kernels {

const char* batch_op_name(BatchOp op) {
    switch (op) {
        case BatchOp::Volume: return "Volume";
        case BatchOp::Distance: return "Distance";
        case BatchOp::Intersects: return "Intersects";
    }
    return "?";
}

namespace {

TypeMismatch mismatch(BatchOp op, const Geometry& record_geom) {
    std::string msg = std::string(batch_op_name(op)) + " does not support ";
    msg += geometry_kind_name(record_geom);
    msg += " for this argument pairing";
    return TypeMismatch{std::move(msg)};
}

KernelValue eval_volume(const Geometry& g, const ExecutorConfig& cfg) {
    if (kind_of(g) != GeometryKind::Mesh) {
        return TypeMismatch{std::string("Volume requires a TIN or polyhedral surface, got ") +
                            geometry_kind_name(g)};
    }
    return mesh_volume(std::get<TriangleMesh>(g), cfg);
}

KernelValue eval_distance(const Geometry& record_geom, const Geometry& arg,
                          const ExecutorConfig& cfg) {
    const GeometryKind rk = kind_of(record_geom);
    const GeometryKind ak = kind_of(arg);

    if (rk == GeometryKind::Segment && ak == GeometryKind::Segment)
        return segment_segment_distance(segment_view(record_geom), segment_view(arg)).distance;
    if (rk == GeometryKind::Segment && ak == GeometryKind::Mesh)
        return distance_to_mesh(segment_view(record_geom), std::get<TriangleMesh>(arg), cfg).distance;
    if (rk == GeometryKind::Point && ak == GeometryKind::Mesh)
        return distance_to_mesh(std::get<Point3>(record_geom), std::get<TriangleMesh>(arg), cfg)
            .distance;
    if (rk == GeometryKind::Mesh && ak == GeometryKind::Segment)
        return distance_to_mesh(segment_view(arg), std::get<TriangleMesh>(record_geom), cfg).distance;
    if (rk == GeometryKind::Mesh && ak == GeometryKind::Point)
        return distance_to_mesh(std::get<Point3>(arg), std::get<TriangleMesh>(record_geom), cfg)
            .distance;

    return mismatch(BatchOp::Distance, record_geom);
}

KernelValue eval_intersects(const Geometry& record_geom, const Geometry& arg,
                            const ExecutorConfig& cfg) {
    const GeometryKind rk = kind_of(record_geom);
    const GeometryKind ak = kind_of(arg);

    if (rk == GeometryKind::Segment && ak == GeometryKind::Mesh)
        return intersects_mesh(segment_view(record_geom), std::get<TriangleMesh>(arg), cfg).hit;
    if (rk == GeometryKind::Mesh && ak == GeometryKind::Segment)
        return intersects_mesh(segment_view(arg), std::get<TriangleMesh>(record_geom), cfg).hit;

    return mismatch(BatchOp::Intersects, record_geom);
}

KernelValue eval_one(BatchOp op, const Geometry& record_geom, const std::optional<Geometry>& arg,
                     const ExecutorConfig& cfg) {
    switch (op) {
        case BatchOp::Volume:
            return eval_volume(record_geom, cfg);
        case BatchOp::Distance:
            if (!arg) return TypeMismatch{"Distance requires a geometry argument"};
            return eval_distance(record_geom, *arg, cfg);
        case BatchOp::Intersects:
            if (!arg) return TypeMismatch{"Intersects requires a geometry argument"};
            return eval_intersects(record_geom, *arg, cfg);
    }
    return TypeMismatch{"unknown operator"};
}

}  // namespace

std::vector<KernelResult> run_batch(BatchOp op, const std::vector<store::GeometryRecord>& records,
                                    const std::optional<Geometry>& argument,
                                    const ExecutorConfig& cfg) {
    std::vector<KernelResult> results(records.size());

    if (records.size() == 1) {
        // Single record: let the face axis parallelize inside the kernel.
        results[0].record_id = records[0].id;
        results[0].value = eval_one(op, records[0].geometry, argument, cfg);
        return results;
    }

    ExecutorConfig inner = cfg;
    inner.backend = Backend::Sequential;
    inner.worker_count = 1;

    for_each_chunk(cfg, records.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            results[i].record_id = records[i].id;
            results[i].value = eval_one(op, records[i].geometry, argument, inner);
        }
    });
    return results;
}

}  // namespace tindb::kernels
