#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tindb/kernels.hpp"
#include "tindb/store_types.hpp"

namespace tindb::kernels {

enum class BatchOp { Volume, Distance, Intersects };

const char* batch_op_name(BatchOp op);

// Per-record type incompatibility; recorded in the result slot instead of
// aborting the batch.
struct TypeMismatch {
    std::string message;
};

// Scalar / boolean / error outcome of one record under one operator.
using KernelValue = std::variant<double, bool, TypeMismatch>;

struct KernelResult {
    std::int64_t record_id = 0;
    KernelValue value;

    bool is_error() const { return std::holds_alternative<TypeMismatch>(value); }
};

// Evaluates `op` over every record, in input order, producing exactly one
// result per record. The whole column is always evaluated; callers apply
// WHERE filtering afterwards over this output. `argument` is the literal
// side of binary operators (none for Volume).
//
// Supported pairings (record geometry x argument):
//   Volume:     mesh
//   Distance:   segment x segment, segment x mesh, point x mesh,
//               mesh x segment, mesh x point
//   Intersects: segment x mesh, mesh x segment
// Anything else yields a TypeMismatch in that record's slot.
//
// Parallelization: batches with more than one record partition the record
// axis across workers and run each record's kernel sequentially; a
// single-record batch passes cfg through so the face axis parallelizes.
std::vector<KernelResult> run_batch(BatchOp op, const std::vector<store::GeometryRecord>& records,
                                    const std::optional<Geometry>& argument,
                                    const ExecutorConfig& cfg);

}  // namespace tindb::kernels
