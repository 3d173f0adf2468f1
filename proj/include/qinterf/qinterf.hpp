// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qinterf/circuit.hpp"
#include "qinterf/convergence.hpp"
#include "qinterf/csv.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/experiment.hpp"
#include "qinterf/haar.hpp"
#include "qinterf/histogram.hpp"
#include "qinterf/interference.hpp"
#include "qinterf/operators.hpp"
#include "qinterf/random_stream.hpp"
#include "qinterf/spectral.hpp"
