#pragma once

#include <string>

#include "coref/types.hpp"

namespace coref {

// Prepends the speaker's name tokens plus a ":" separator at every speaker
// change-point (including before the first utterance). Inserted tokens are
// flagged synthetic; sentence boundaries and gold mention indices are
// remapped. A missing speaker string is treated as the speaker "unknown".
Document insert_speakers(const Document& doc);

inline constexpr const char* kSpeakerSeparator = ":";
inline constexpr const char* kUnknownSpeaker = "unknown";

}  // namespace coref
