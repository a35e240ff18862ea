#pragma once

// Umbrella header for the UIED library: top-down coarse-to-fine GUI element
// detection, ground-truth ingestion, synthetic screen generation and the
// IoU-based evaluation harness. Transport-dependent pieces (HTTP/subprocess
// classifier clients) live in classify_client.hpp and are not pulled in here.

#include "uied/annotate.hpp"
#include "uied/classify.hpp"
#include "uied/config.hpp"
#include "uied/dataset.hpp"
#include "uied/elements.hpp"
#include "uied/error.hpp"
#include "uied/eval.hpp"
#include "uied/formats.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"
#include "uied/image_io.hpp"
#include "uied/layout.hpp"
#include "uied/pixelops.hpp"
#include "uied/protocol.hpp"
#include "uied/synth.hpp"
#include "uied/textmerge.hpp"
