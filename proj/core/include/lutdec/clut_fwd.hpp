#pragma once

namespace lutdec {

struct FrameClut;
struct RankClut;

}  // namespace lutdec
