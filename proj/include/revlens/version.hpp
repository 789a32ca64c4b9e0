#pragma once

#define REVLENS_VERSION "0.1.0"
