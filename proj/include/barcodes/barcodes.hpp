#pragma once

#include "barcodes/barannikov.hpp"
#include "barcodes/barcode.hpp"
#include "barcodes/complex.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/expression.hpp"
#include "barcodes/field.hpp"
#include "barcodes/interleaving.hpp"
#include "barcodes/io.hpp"
#include "barcodes/local_index.hpp"
#include "barcodes/lower_star.hpp"
#include "barcodes/metric.hpp"
#include "barcodes/module.hpp"
#include "barcodes/rational.hpp"
#include "barcodes/spectrum.hpp"
