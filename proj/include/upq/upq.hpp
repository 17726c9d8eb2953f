#pragma once

// Umbrella header: the whole library except the CLI front end.

#include "upq/enumeration.hpp"
#include "upq/errors.hpp"
#include "upq/json_io.hpp"
#include "upq/matrix_lab.hpp"
#include "upq/preimage.hpp"
#include "upq/spectra.hpp"
