#pragma once

// Umbrella header for the whole library.

#include "berezin/errors.hpp"
#include "berezin/matrix.hpp"
#include "berezin/eig.hpp"
#include "berezin/rkhs.hpp"
#include "berezin/core.hpp"
#include "berezin/toeplitz.hpp"
#include "berezin/ensemble.hpp"
#include "berezin/catalog.hpp"
#include "berezin/audit.hpp"
