#pragma once

// Umbrella header for the msa core library.

#include "msa/conceptspace.hpp"
#include "msa/corpus.hpp"
#include "msa/correlation.hpp"
#include "msa/error.hpp"
#include "msa/evalbench.hpp"
#include "msa/index.hpp"
#include "msa/miner.hpp"
#include "msa/relatedness.hpp"
#include "msa/significance.hpp"
#include "msa/tokenizer.hpp"
#include "msa/types.hpp"
