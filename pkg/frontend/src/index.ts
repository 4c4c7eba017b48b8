export { parseCsv, column, crossingTime, CsvFormatError } from "./csv.js";
export { readSnapshot, SnapshotFormatError } from "./snapshot.js";
export { linePlot, heatMap, fmt } from "./svg.js";
export {
  renderProfiles,
  renderTimeSeries,
  renderCrossingTimes,
  renderFieldSurface,
  renderGrowthRate,
  renderBranchOmega,
} from "./figures.js";
