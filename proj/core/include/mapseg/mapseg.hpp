#pragma once

#include "mapseg/affinity_operator.hpp"
#include "mapseg/eigensolver.hpp"
#include "mapseg/energy.hpp"
#include "mapseg/image_io.hpp"
#include "mapseg/image_model.hpp"
#include "mapseg/oracle.hpp"
#include "mapseg/quantizer.hpp"
#include "mapseg/segmenter.hpp"
