#pragma once

#include "adcat/errors.hpp"
#include "adcat/ring.hpp"
#include "adcat/matrix.hpp"
#include "adcat/linalg.hpp"
#include "adcat/matcat.hpp"
#include "adcat/sampling.hpp"
#include "adcat/twisted.hpp"
#include "adcat/coherence.hpp"
#include "adcat/charseq.hpp"
#include "adcat/nested.hpp"
#include "adcat/json_io.hpp"
