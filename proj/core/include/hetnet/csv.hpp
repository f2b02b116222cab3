#pragma once

#include <string>

namespace hetnet {

/// Fixed 9-significant-digit rendering used by every CSV writer.
std::string format_number(double value);

}  // namespace hetnet
