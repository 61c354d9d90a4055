#pragma once

#include "folforge/corpus.hpp"
#include "folforge/depth.hpp"
#include "folforge/error.hpp"
#include "folforge/formula.hpp"
#include "folforge/generator.hpp"
#include "folforge/lexicalizer.hpp"
#include "folforge/metrics.hpp"
#include "folforge/parser.hpp"
#include "folforge/random.hpp"
#include "folforge/render.hpp"
#include "folforge/symbol_map.hpp"
#include "folforge/translator.hpp"
#include "folforge/vocabulary.hpp"

namespace folforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace folforge
