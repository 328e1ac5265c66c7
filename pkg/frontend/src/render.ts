import * as d3 from 'd3';

import { LEGEND } from './colors';
import type { ViewEdge, ViewGraphModel, ViewNode } from './viewgraph';

interface SimNode extends d3.SimulationNodeDatum {
  id: string;
  name: string;
  color: string;
  label: string;
}

interface SimLink extends d3.SimulationLinkDatum<SimNode> {
  id: string;
  relation: string;
}

/**
 * Force-directed rendering of a ViewGraphModel. Owns the svg and the
 * simulation; `update` reconciles incrementally so expansions keep the
 * existing layout.
 */
export class GraphRenderer {
  private simulation: d3.Simulation<SimNode, SimLink>;
  private svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;
  private linkGroup: d3.Selection<SVGGElement, unknown, null, undefined>;
  private nodeGroup: d3.Selection<SVGGElement, unknown, null, undefined>;
  private simNodes: SimNode[] = [];
  private simLinks: SimLink[] = [];

  constructor(
    svgElement: SVGSVGElement,
    private readonly onNodeClick: (id: string) => void,
  ) {
    this.svg = d3.select(svgElement);
    const { width, height } = svgElement.getBoundingClientRect();
    this.svg.selectAll('*').remove();

    const zoomable = this.svg.append('g');
    this.svg.call(
      d3
        .zoom<SVGSVGElement, unknown>()
        .scaleExtent([0.2, 4])
        .on('zoom', (event) => zoomable.attr('transform', event.transform)),
    );
    this.linkGroup = zoomable.append('g').attr('stroke', '#9aa4b1');
    this.nodeGroup = zoomable.append('g');

    this.simulation = d3
      .forceSimulation<SimNode>()
      .force('charge', d3.forceManyBody().strength(-220))
      .force('center', d3.forceCenter(width / 2 || 400, height / 2 || 300))
      .force('collide', d3.forceCollide(26))
      .on('tick', () => this.tick());

    this.drawLegend();
  }

  private drawLegend(): void {
    const legend = this.svg.append('g').attr('transform', 'translate(12, 16)');
    LEGEND.forEach((entry, i) => {
      const row = legend.append('g').attr('transform', `translate(0, ${i * 20})`);
      row.append('circle').attr('r', 6).attr('fill', entry.color);
      row
        .append('text')
        .attr('x', 12)
        .attr('y', 4)
        .attr('font-size', 12)
        .text(entry.caption);
    });
  }

  update(model: ViewGraphModel): void {
    const positions = new Map(this.simNodes.map((n) => [n.id, n]));
    this.simNodes = model.nodeList.map((n: ViewNode) => {
      const prior = positions.get(n.id);
      return prior ?? { id: n.id, name: n.name, color: n.color, label: n.label };
    });
    this.simLinks = model.edgeList.map((e: ViewEdge) => ({
      id: e.id,
      source: e.source,
      target: e.target,
      relation: e.relation,
    }));

    this.simulation.nodes(this.simNodes);
    this.simulation.force(
      'link',
      d3
        .forceLink<SimNode, SimLink>(this.simLinks)
        .id((d) => d.id)
        .distance(80),
    );
    this.simulation.alpha(0.6).restart();
    this.tick();
  }

  private tick(): void {
    const links = this.linkGroup
      .selectAll<SVGLineElement, SimLink>('line')
      .data(this.simLinks, (d) => d.id);
    links.exit().remove();
    const linksEnter = links.enter().append('line').attr('stroke-width', 1.2);
    linksEnter.append('title').text((d) => d.relation);
    const allLinks = linksEnter.merge(links);

    const nodes = this.nodeGroup
      .selectAll<SVGGElement, SimNode>('g.node')
      .data(this.simNodes, (d) => d.id);
    nodes.exit().remove();
    const nodesEnter = nodes
      .enter()
      .append('g')
      .attr('class', 'node')
      .style('cursor', 'pointer')
      .on('click', (_event, d) => this.onNodeClick(d.id));
    nodesEnter.append('circle').attr('r', 10);
    nodesEnter
      .append('text')
      .attr('x', 13)
      .attr('y', 4)
      .attr('font-size', 11);
    const allNodes = nodesEnter.merge(nodes);
    allNodes.select('circle').attr('fill', (d) => d.color);
    allNodes.select('text').text((d) => d.name);

    allLinks
      .attr('x1', (d) => (d.source as SimNode).x ?? 0)
      .attr('y1', (d) => (d.source as SimNode).y ?? 0)
      .attr('x2', (d) => (d.target as SimNode).x ?? 0)
      .attr('y2', (d) => (d.target as SimNode).y ?? 0);
    allNodes.attr('transform', (d) => `translate(${d.x ?? 0}, ${d.y ?? 0})`);
  }
}
