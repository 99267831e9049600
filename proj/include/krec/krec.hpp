#pragma once

#include "krec/ambiguity.hpp"
#include "krec/bitseq.hpp"
#include "krec/core.hpp"
#include "krec/debruijn.hpp"
#include "krec/events.hpp"
#include "krec/experiment.hpp"
#include "krec/pairing.hpp"
#include "krec/reconstruct.hpp"
#include "krec/rng.hpp"
#include "krec/theory.hpp"
