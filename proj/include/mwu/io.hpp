#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "mwu/instance.hpp"

namespace mwu {

enum class InstanceKind { Covering, Packing, Positive, General };

// Only the member matching `kind` is filled.
struct ParsedInstance {
    InstanceKind kind = InstanceKind::Covering;
    CoveringInstance covering;
    PackingInstance packing;
    PositiveInstance positive;
    GeneralInstance general;
};

// Line format, 0-based indexes, `#` comments:
//   covering m n lambda | packing m n lambda | positive mp mc n | general m n
//   C i j v | P i j v | a j v | b i v | bounds L U
// Without a `bounds` line, L and U are taken from the data.
ParsedInstance parse_instance(std::istream& in);
ParsedInstance parse_instance_file(const std::string& path);

std::string emit(const CoveringInstance& inst);
std::string emit(const PackingInstance& inst);
std::string emit(const PositiveInstance& inst);
std::string emit(const GeneralInstance& inst);

// `set C i j v` means a smaller entry when restricting and a larger one when
// relaxing. Restricting streams may also carry `set a j v` and `set b i v`
// (objective and covering right-hand side growing); relaxing streams carry
// `set P i j v`, `set rhsP i v` and `set rhsC j v`.
enum class UpdateDirection { Restricting, Relaxing };

std::vector<UpdateEvent> parse_updates(std::istream& in, UpdateDirection dir);
std::vector<UpdateEvent> parse_updates_file(const std::string& path, UpdateDirection dir);
std::string emit_updates(std::span<const UpdateEvent> events, UpdateDirection dir);

}  // namespace mwu
