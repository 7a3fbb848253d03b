#pragma once

#include "zczseq/analysis.hpp"
#include "zczseq/cazac.hpp"
#include "zczseq/correlation.hpp"
#include "zczseq/numerics.hpp"
#include "zczseq/random.hpp"
#include "zczseq/zcz.hpp"
