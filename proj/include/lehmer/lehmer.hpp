#pragma once

// Umbrella header.

#include "lehmer/bounds.hpp"
#include "lehmer/classifier.hpp"
#include "lehmer/cyclotomic.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/geodesic.hpp"
#include "lehmer/mahler.hpp"
#include "lehmer/polynomial.hpp"
#include "lehmer/roots.hpp"
#include "lehmer/search.hpp"
#include "lehmer/trace.hpp"
