/*
 * Copyright 2026 The polypta Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "polypta/ast.h"
#include "polypta/compare.h"
#include "polypta/context.h"
#include "polypta/corpus.h"
#include "polypta/fixpoint.h"
#include "polypta/interlang_cg.h"
#include "polypta/interpreter.h"
#include "polypta/monolithic.h"
#include "polypta/parser.h"
#include "polypta/pre_analysis.h"
#include "polypta/printer.h"
#include "polypta/program_index.h"
#include "polypta/report.h"
#include "polypta/summary.h"
#include "polypta/taint.h"
#include "polypta/validate.h"
