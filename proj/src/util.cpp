#include "twinbld/util.hpp"

// Checked arithmetic and the small containers are header-only; this TU exists
// so the static library always has at least one object even when a toolchain
// strips inline-only archives.

namespace twinbld {

static_assert(sizeof(i64) == 8);

}  // namespace twinbld
