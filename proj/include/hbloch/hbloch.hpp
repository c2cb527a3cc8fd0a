#pragma once

// Umbrella header: weighted harmonic Bloch norms, composition-operator
// essential-norm estimators, and the batch reporting layer.

#include <hbloch/errors.hpp>
#include <hbloch/disk.hpp>
#include <hbloch/analytic.hpp>
#include <hbloch/harmonic.hpp>
#include <hbloch/bloch.hpp>
#include <hbloch/symbol.hpp>
#include <hbloch/essnorm.hpp>
#include <hbloch/compact.hpp>
#include <hbloch/report.hpp>
